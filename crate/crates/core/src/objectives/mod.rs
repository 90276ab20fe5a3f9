//! Value oracles: the set-function abstraction, query counting, and the
//! concrete objectives (graph cut, tagged diverse summarization, modular,
//! coverage).

mod coverage;
mod cut;
mod diverse;
mod modular;
mod oracle;
mod universe;

pub use coverage::Coverage;
pub use cut::CutGraph;
pub use diverse::{Similarity, TaggedCorpus};
pub use modular::Modular;
pub use oracle::{marginal_gain, ElementId, InstrumentedOracle, SubmodularOracle};
pub use universe::CostedUniverse;

use crate::error::Result;
use crate::scalar::Scalar;

/// Modular oracle from per-element values.
pub fn make_modular<T: Scalar>(values: Vec<T>) -> Result<Modular<T>> {
    Modular::new(values)
}

/// Any of the shipped objectives, for callers that pick one at runtime.
#[derive(Debug, Clone)]
pub enum Objective<T: Scalar> {
    Modular(Modular<T>),
    Coverage(Coverage<T>),
    Cut(CutGraph<T>),
    Diverse(TaggedCorpus<T>),
}

impl<T: Scalar> Objective<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::Modular(_) => "modular",
            Objective::Coverage(_) => "coverage",
            Objective::Cut(_) => "graph_cut",
            Objective::Diverse(_) => "diverse_summary",
        }
    }
}

impl<T: Scalar> SubmodularOracle<T> for Objective<T> {
    fn ground_size(&self) -> usize {
        match self {
            Objective::Modular(f) => f.ground_size(),
            Objective::Coverage(f) => f.ground_size(),
            Objective::Cut(f) => f.ground_size(),
            Objective::Diverse(f) => f.ground_size(),
        }
    }

    fn evaluate(&self, set: &[ElementId]) -> T {
        match self {
            Objective::Modular(f) => f.evaluate(set),
            Objective::Coverage(f) => f.evaluate(set),
            Objective::Cut(f) => f.evaluate(set),
            Objective::Diverse(f) => f.evaluate(set),
        }
    }
}
