//! SNAP edge lists: one whitespace-separated `u v` pair per line, `#`
//! comments, LF or CRLF endings.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::objectives::CutGraph;
use crate::scalar::Scalar;

/// A parsed edge list. Vertex ids follow first appearance of each label.
#[derive(Debug, Clone)]
pub struct SnapGraph<T: Scalar> {
    pub graph: CutGraph<T>,
    pub labels: Vec<String>,
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

impl<T: Scalar> SnapGraph<T> {
    /// Undirected edges as label pairs, each ordered by vertex id.
    pub fn labeled_edges(&self) -> BTreeSet<(String, String)> {
        self.graph
            .edges()
            .iter()
            .map(|&(u, v, _)| {
                let (a, b) = (self.labels[u].clone(), self.labels[v].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }
}

pub fn parse_snap_graph<T: Scalar>(reader: impl BufRead) -> Result<SnapGraph<T>> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    let mut seen = BTreeSet::new();
    let mut self_loops = 0;
    let mut duplicate_edges = 0;
    for (index, line) in reader.lines().enumerate() {
        let lineno = index + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(lineno, format!("expected two vertex labels, found {} fields", fields.len())));
        }
        let mut id = |label: &str| {
            *ids.entry(label.to_owned()).or_insert_with(|| {
                labels.push(label.to_owned());
                labels.len() - 1
            })
        };
        let u = id(fields[0]);
        let v = id(fields[1]);
        if u == v {
            self_loops += 1;
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            pairs.push(key);
        } else {
            duplicate_edges += 1;
        }
    }
    if pairs.is_empty() {
        return Err(Error::input("edge list contains no edges"));
    }
    let graph = CutGraph::unweighted(labels.len(), &pairs)?;
    Ok(SnapGraph { graph, labels, self_loops, duplicate_edges })
}

pub fn load_snap_graph<T: Scalar>(path: &Path) -> Result<SnapGraph<T>> {
    parse_snap_graph(BufReader::new(File::open(path)?))
}

/// Writes one `u\tv` line per undirected edge, sorted by vertex id.
/// Vertices without edges are written as self-loops so a reload keeps them.
pub fn write_snap_graph<T: Scalar>(graph: &SnapGraph<T>, mut out: impl Write) -> Result<()> {
    let mut edges: Vec<(usize, usize)> = graph.graph.edges().iter().map(|&(u, v, _)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    writeln!(out, "# vertices {} edges {}", graph.labels.len(), edges.len())?;
    for &(u, v) in &edges {
        writeln!(out, "{}\t{}", graph.labels[u], graph.labels[v])?;
    }
    for v in (0..graph.labels.len()).filter(|&v| graph.graph.neighbors(v).is_empty()) {
        writeln!(out, "{0}\t{0}", graph.labels[v])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::SubmodularOracle;

    #[test]
    fn dedups_and_drops_self_loops() {
        let g: SnapGraph<f64> = parse_snap_graph("# c\n1 2\n2 1\n2 2\n1 3\n".as_bytes()).unwrap();
        assert_eq!(g.graph.ground_size(), 3);
        assert_eq!(g.graph.edges().len(), 2);
        assert_eq!(g.self_loops, 1);
        assert_eq!(g.duplicate_edges, 1);
        assert_eq!(g.labels, vec!["1", "2", "3"]);
    }

    #[test]
    fn crlf_and_tabs() {
        let g: SnapGraph<f64> = parse_snap_graph("a\tb\r\nb\tc\r\n".as_bytes()).unwrap();
        assert_eq!(g.graph.edges().len(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_snap_graph::<f64>("".as_bytes()), Err(Error::Input(_))));
        assert!(matches!(parse_snap_graph::<f64>("# only\n".as_bytes()), Err(Error::Input(_))));
        assert!(matches!(parse_snap_graph::<f64>("1 2\n3\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_snap_graph::<f64>("1 2 3\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
    }
}
