//! Tagged corpora as tab-separated records: `id<TAB>tags` or, in column
//! mode, `id<TAB>cost<TAB>tags`, with comma-separated tags.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::objectives::TaggedCorpus;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct TaggedData<T: Scalar> {
    pub corpus: TaggedCorpus<T>,
    pub ids: Vec<String>,
    /// Tag strings indexed by interned id.
    pub vocabulary: Vec<String>,
    /// Per-item costs when read in column mode.
    pub costs: Option<Vec<T>>,
}

pub(crate) fn parse_cost<T: Scalar>(field: &str, lineno: usize) -> Result<T> {
    let value: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::parse(lineno, format!("invalid cost {field:?}")))?;
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::parse(lineno, format!("cost must be positive and finite, got {value}")));
    }
    Ok(T::lit(value))
}

/// Parses a corpus; `cost_column` selects the three-field layout. The
/// diversity coefficient is set to the corpus default.
pub fn parse_tagged_corpus<T: Scalar>(reader: impl BufRead, cost_column: bool) -> Result<TaggedData<T>> {
    let expected = if cost_column { 3 } else { 2 };
    let mut ids = Vec::new();
    let mut seen_ids = HashSet::new();
    let mut tag_ids: HashMap<String, u32> = HashMap::new();
    let mut vocabulary = Vec::new();
    let mut tags = Vec::new();
    let mut costs = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let lineno = index + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != expected {
            return Err(Error::parse(lineno, format!("expected {expected} tab-separated fields, found {}", fields.len())));
        }
        let id = fields[0].trim();
        if id.is_empty() {
            return Err(Error::parse(lineno, "empty item id"));
        }
        if !seen_ids.insert(id.to_owned()) {
            return Err(Error::parse(lineno, format!("duplicate item id {id:?}")));
        }
        if cost_column {
            costs.push(parse_cost(fields[1], lineno)?);
        }
        let mut item = Vec::new();
        for tag in fields[expected - 1].split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let next = vocabulary.len() as u32;
            let t = *tag_ids.entry(tag.to_owned()).or_insert_with(|| {
                vocabulary.push(tag.to_owned());
                next
            });
            item.push(t);
        }
        if item.is_empty() {
            return Err(Error::parse(lineno, format!("item {id:?} has no tags")));
        }
        ids.push(id.to_owned());
        tags.push(item);
    }
    if ids.is_empty() {
        return Err(Error::input("corpus contains no items"));
    }
    let corpus = TaggedCorpus::new(tags)?.with_default_gamma();
    Ok(TaggedData { corpus, ids, vocabulary, costs: cost_column.then_some(costs) })
}

pub fn load_tagged_corpus<T: Scalar>(path: &Path, cost_column: bool) -> Result<TaggedData<T>> {
    parse_tagged_corpus(BufReader::new(File::open(path)?), cost_column)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::SubmodularOracle;

    #[test]
    fn two_items_three_tags() {
        let d: TaggedData<f64> = parse_tagged_corpus("p1\ta,b\np2\tb,c\n".as_bytes(), false).unwrap();
        assert_eq!(d.corpus.ground_size(), 2);
        assert_eq!(d.vocabulary, vec!["a", "b", "c"]);
        assert!(d.costs.is_none());
    }

    #[test]
    fn cost_column() {
        let d: TaggedData<f64> = parse_tagged_corpus("p1\t4\ta,b\n".as_bytes(), true).unwrap();
        assert_eq!(d.costs, Some(vec![4.0]));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_tagged_corpus::<f64>("p1\ta\np2\t\n".as_bytes(), false).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_tagged_corpus::<f64>("p1\ta\np1\tb\n".as_bytes(), false).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_tagged_corpus::<f64>("p1\t0\ta\n".as_bytes(), true).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }
}
