use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::objectives::oracle::{ElementId, SubmodularOracle};
use crate::scalar::Scalar;

/// Undirected weighted graph whose cut function is the objective.
#[derive(Debug, Clone)]
pub struct CutGraph<T: Scalar> {
    vertices: usize,
    edges: Vec<(usize, usize, T)>,
    adjacency: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> CutGraph<T> {
    /// Each unordered pair may appear once; self-loops and negative weights
    /// are rejected.
    pub fn new(vertices: usize, edges: Vec<(usize, usize, T)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); vertices];
        for &(u, v, w) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::input(format!("edge ({u}, {v}) references a vertex outside 0..{vertices}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop on vertex {u}")));
            }
            if !(w >= T::zero()) || !w.is_finite() {
                return Err(Error::input(format!("edge ({u}, {v}) has invalid weight {w}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::input(format!("duplicate edge ({u}, {v})")));
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        Ok(Self { vertices, edges, adjacency })
    }

    pub fn unweighted(vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(vertices, pairs.iter().map(|&(u, v)| (u, v, T::one())).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, T)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, T)] {
        &self.adjacency[v]
    }

    /// Total weight of edges with exactly one endpoint in `set`.
    pub fn cut_value(&self, set: &[ElementId]) -> Result<T> {
        if let Some(&v) = set.iter().find(|&&v| v >= self.vertices) {
            return Err(Error::input(format!("unknown vertex {v}")));
        }
        Ok(self.evaluate(set))
    }
}

impl<T: Scalar> SubmodularOracle<T> for CutGraph<T> {
    fn ground_size(&self) -> usize {
        self.vertices
    }

    fn evaluate(&self, set: &[ElementId]) -> T {
        let mut inside = vec![false; self.vertices];
        for &v in set {
            inside[v] = true;
        }
        let mut total = T::zero();
        for &v in set {
            for &(u, w) in &self.adjacency[v] {
                if !inside[u] {
                    total += w;
                }
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> CutGraph<f64> {
        CutGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_values() {
        let g = triangle();
        assert_eq!(g.cut_value(&[]).unwrap(), 0.0);
        assert_eq!(g.cut_value(&[1]).unwrap(), 2.0);
        assert_eq!(g.cut_value(&[0, 1, 2]).unwrap(), 0.0);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        assert!(triangle().cut_value(&[3]).is_err());
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(CutGraph::<f64>::unweighted(2, &[(0, 0)]).is_err());
        assert!(CutGraph::<f64>::unweighted(2, &[(0, 1), (1, 0)]).is_err());
    }
}
