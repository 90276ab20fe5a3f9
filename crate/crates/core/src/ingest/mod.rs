//! Dataset loading: SNAP edge lists, tagged corpora, cost files and
//! seeded synthetic instances, resolved into an objective plus a costed
//! universe.

mod snap;
mod synth;
mod tagged;

pub use snap::{load_snap_graph, parse_snap_graph, write_snap_graph, SnapGraph};
pub use synth::{coverage, er_graph, modular_fixture, random_costs, random_modular};
pub use tagged::{load_tagged_corpus, parse_tagged_corpus, TaggedData};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::objectives::{CostedUniverse, Objective};
use crate::scalar::Scalar;

/// Where element costs come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostMode {
    UniformOne,
    /// The cost column of a tagged corpus.
    Column,
    /// An `id<TAB>cost` file covering every element.
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SynthSpec {
    ErGraph { n: usize, p: f64, seed: u64 },
    Coverage { n: usize, topics: usize, max_tags: usize, seed: u64 },
    Modular { n: usize },
}

/// A dataset reference: `snap:<path>`, `tagged:<path>`,
/// `tagged-cost:<path>` (cost column), or `synth:<kind>:k=v,..`.
#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSpec {
    Snap(PathBuf),
    Tagged { path: PathBuf, cost_column: bool },
    Synthetic(SynthSpec),
}

impl fmt::Display for DatasetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatasetSpec::Snap(p) => write!(f, "snap:{}", p.display()),
            DatasetSpec::Tagged { path, cost_column: false } => write!(f, "tagged:{}", path.display()),
            DatasetSpec::Tagged { path, cost_column: true } => write!(f, "tagged-cost:{}", path.display()),
            DatasetSpec::Synthetic(SynthSpec::ErGraph { n, p, seed }) => write!(f, "synth:er_graph:n={n},p={p},seed={seed}"),
            DatasetSpec::Synthetic(SynthSpec::Coverage { n, topics, max_tags, seed }) => {
                write!(f, "synth:coverage:n={n},topics={topics},k={max_tags},seed={seed}")
            }
            DatasetSpec::Synthetic(SynthSpec::Modular { n }) => write!(f, "synth:modular:n={n}"),
        }
    }
}

fn parse_params(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("generator parameter {item:?} is not key=value")))?;
        out.insert(k.trim().to_owned(), v.trim().to_owned());
    }
    Ok(out)
}

fn param<V: FromStr>(params: &mut BTreeMap<String, String>, key: &str, default: Option<V>) -> Result<V> {
    match params.remove(key) {
        Some(v) => v.parse().map_err(|_| Error::Config(format!("invalid value {v:?} for generator parameter {key}"))),
        None => default.ok_or_else(|| Error::Config(format!("generator parameter {key} is required"))),
    }
}

impl FromStr for DatasetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("dataset {s:?} must look like kind:argument")))?;
        match kind {
            "snap" => Ok(DatasetSpec::Snap(rest.into())),
            "tagged" => Ok(DatasetSpec::Tagged { path: rest.into(), cost_column: false }),
            "tagged-cost" => Ok(DatasetSpec::Tagged { path: rest.into(), cost_column: true }),
            "synth" => {
                let (generator, text) = rest.split_once(':').unwrap_or((rest, ""));
                let mut params = parse_params(text)?;
                let spec = match generator {
                    "er_graph" => SynthSpec::ErGraph {
                        n: param(&mut params, "n", None)?,
                        p: param(&mut params, "p", None)?,
                        seed: param(&mut params, "seed", Some(0))?,
                    },
                    "coverage" => SynthSpec::Coverage {
                        n: param(&mut params, "n", None)?,
                        topics: param(&mut params, "topics", Some(20))?,
                        max_tags: param(&mut params, "k", Some(4))?,
                        seed: param(&mut params, "seed", Some(0))?,
                    },
                    "modular" => {
                        let n = param(&mut params, "n", Some(3))?;
                        params.remove("seed");
                        SynthSpec::Modular { n }
                    }
                    other => return Err(Error::Config(format!("unknown generator {other:?}"))),
                };
                if let Some(k) = params.keys().next() {
                    return Err(Error::Config(format!("unknown generator parameter {k:?}")));
                }
                Ok(DatasetSpec::Synthetic(spec))
            }
            other => Err(Error::Config(format!("unknown dataset kind {other:?}"))),
        }
    }
}

/// A resolved dataset.
#[derive(Debug, Clone)]
pub struct Dataset<T: Scalar> {
    pub name: String,
    pub objective: Objective<T>,
    pub universe: CostedUniverse<T>,
    /// External id of each element, used to match cost files.
    pub ids: Vec<String>,
}

/// Reads an `id<TAB>cost` file and orders the costs by `ids`. Every id must
/// appear exactly once.
pub fn load_cost_file<T: Scalar>(path: &Path, ids: &[String]) -> Result<Vec<T>> {
    parse_cost_file(BufReader::new(File::open(path)?), ids)
}

pub fn parse_cost_file<T: Scalar>(reader: impl BufRead, ids: &[String]) -> Result<Vec<T>> {
    let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut costs: Vec<Option<T>> = vec![None; ids.len()];
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, cost) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(lineno, "expected id<TAB>cost"))?;
        let &slot = index
            .get(id.trim())
            .ok_or_else(|| Error::parse(lineno, format!("unknown element id {:?}", id.trim())))?;
        if costs[slot].is_some() {
            return Err(Error::parse(lineno, format!("duplicate cost for element {:?}", id.trim())));
        }
        costs[slot] = Some(tagged::parse_cost(cost, lineno)?);
    }
    costs
        .into_iter()
        .zip(ids)
        .map(|(c, id)| c.ok_or_else(|| Error::input(format!("cost file has no entry for element {id:?}"))))
        .collect()
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn load_dataset<T: Scalar>(spec: &DatasetSpec, cost_file: Option<&Path>) -> Result<Dataset<T>> {
    let (objective, ids, column_costs) = match spec {
        DatasetSpec::Snap(path) => {
            let g = load_snap_graph(path)?;
            (Objective::Cut(g.graph), g.labels, None)
        }
        DatasetSpec::Tagged { path, cost_column } => {
            let d = load_tagged_corpus(path, *cost_column)?;
            (Objective::Diverse(d.corpus), d.ids, d.costs)
        }
        DatasetSpec::Synthetic(s) => match *s {
            SynthSpec::ErGraph { n, p, seed } => (Objective::Cut(er_graph(n, p, seed)?), numbered(n), None),
            SynthSpec::Coverage { n, topics, max_tags, seed } => {
                (Objective::Coverage(coverage(n, topics, max_tags, seed)?), numbered(n), None)
            }
            SynthSpec::Modular { n } => (Objective::Modular(modular_fixture(n)?), numbered(n), None),
        },
    };
    let universe = match (cost_file, column_costs) {
        (Some(_), Some(_)) => return Err(Error::Config("a cost file cannot be combined with a cost column".into())),
        (Some(path), None) => CostedUniverse::new(load_cost_file(path, &ids)?)?,
        (None, Some(costs)) => CostedUniverse::new(costs)?,
        (None, None) => CostedUniverse::uniform(ids.len()),
    };
    Ok(Dataset { name: spec.to_string(), objective, universe, ids })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for text in ["synth:er_graph:n=8,p=0.5,seed=7", "synth:modular:n=3", "snap:/tmp/x.txt", "tagged-cost:a.tsv"] {
            let spec: DatasetSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
    }

    #[test]
    fn spec_errors() {
        assert!(matches!("nothing".parse::<DatasetSpec>(), Err(Error::Config(_))));
        assert!(matches!("synth:er_graph:n=8".parse::<DatasetSpec>(), Err(Error::Config(_))));
        assert!(matches!("synth:er_graph:n=8,p=0.1,q=2".parse::<DatasetSpec>(), Err(Error::Config(_))));
    }

    #[test]
    fn cost_file_covers_every_element() {
        let ids = numbered(2);
        let c: Vec<f64> = parse_cost_file("1\t2.5\n0\t1\n".as_bytes(), &ids).unwrap();
        assert_eq!(c, vec![1.0, 2.5]);
        assert!(parse_cost_file::<f64>("0\t1\n".as_bytes(), &ids).is_err());
        assert!(matches!(parse_cost_file::<f64>("0\t1\n7\t1\n".as_bytes(), &ids), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn modular_dataset() {
        let d: Dataset<f64> = load_dataset(&"synth:modular:n=3".parse().unwrap(), None).unwrap();
        assert_eq!(d.universe.len(), 3);
        assert_eq!(d.objective.name(), "modular");
    }
}
