//! Exact decision engines: proper list colorings, independent transversals of
//! color systems, and exhaustive choosability of `K_{Δ_B, Δ_A}`.

mod backtrack;
mod decide;
mod simulate;
mod transversal;

pub use backtrack::backtrack_coloring;
pub use decide::{decide_choosable, DecideRule, Decision, Verdict};
pub use simulate::{reserve_probability, simulate_reserve_coloring, ReserveConfig, ReserveTally};
pub use transversal::{independent_transversal, transversal_coloring};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Color, Coloring, ListInstance, ModelError};

/// Colors are packed into a `u64`, so engines handle at most 64 colors.
pub const MAX_COLORS: usize = 64;

pub(crate) type Mask = u64;

pub(crate) fn mask_of(set: &[Color]) -> Mask {
    set.iter().fold(0, |m, &c| m | (1 << c))
}

pub(crate) fn colors_of(mut m: Mask) -> Vec<Color> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("{0} colors exceed the engine limit of {MAX_COLORS}")]
    TooManyColors(usize),
    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("search budget exhausted after {0} nodes")]
    Exhausted(u64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Node budget for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(200_000_000);

    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Debug)]
pub(crate) struct NodeCounter {
    pub used: u64,
    limit: u64,
}

impl NodeCounter {
    pub fn new(budget: Budget) -> Self {
        NodeCounter { used: 0, limit: budget.0 }
    }

    /// Counts one node; false once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }
}

/// Which engine answers [`has_proper_coloring`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Vertex-by-vertex backtracking; works on any bipartite adjacency.
    Backtrack,
    /// Independent transversal of the color hypergraph; complete bipartite only.
    Transversal,
    /// Transversal when the instance is complete, otherwise backtracking.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringCheck {
    /// `Some` iff the instance is colorable; the coloring is proper.
    pub coloring: Option<Coloring>,
    pub nodes: u64,
}

impl ColoringCheck {
    pub fn colorable(&self) -> bool {
        self.coloring.is_some()
    }
}

pub(crate) fn check_size(instance: &ListInstance) -> Result<(), CheckError> {
    if instance.universe > MAX_COLORS {
        return Err(CheckError::TooManyColors(instance.universe));
    }
    instance.ensure_valid()?;
    Ok(())
}

/// Decides whether `instance` admits a proper coloring from its lists.
/// Budget exhaustion is returned as [`CheckError::Exhausted`], never as
/// "not colorable".
pub fn has_proper_coloring(
    instance: &ListInstance,
    engine: Engine,
    budget: Budget,
) -> Result<ColoringCheck, CheckError> {
    match engine {
        Engine::Backtrack => backtrack_coloring(instance, budget),
        Engine::Transversal => transversal_coloring(instance, budget),
        Engine::Auto if instance.is_complete() => transversal_coloring(instance, budget),
        Engine::Auto => backtrack_coloring(instance, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct_blocks, BlockSpec};
    use crate::model::ListInstance;

    fn both(inst: &ListInstance) -> bool {
        let x = has_proper_coloring(inst, Engine::Backtrack, Budget::unlimited()).unwrap();
        let y = has_proper_coloring(inst, Engine::Transversal, Budget::unlimited()).unwrap();
        assert_eq!(x.colorable(), y.colorable());
        for c in [&x.coloring, &y.coloring].into_iter().flatten() {
            assert!(c.is_proper_for(inst));
        }
        x.colorable()
    }

    #[test]
    fn star_with_two_singletons_is_uncolorable() {
        let inst = ListInstance::complete(2, 2, 1, vec![vec![0, 1]], vec![vec![0], vec![1]]);
        assert!(!both(&inst));
    }

    #[test]
    fn single_edge_is_colorable() {
        let inst = ListInstance::complete(2, 2, 1, vec![vec![0, 1]], vec![vec![0]]);
        assert!(both(&inst));
        let c = has_proper_coloring(&inst, Engine::Auto, Budget::unlimited())
            .unwrap()
            .coloring
            .unwrap();
        assert_eq!((c.a[0], c.b[0]), (1, 0));
    }

    #[test]
    fn block_witness_is_uncolorable() {
        let inst = construct_blocks(&BlockSpec::new(2, vec![2]).unwrap());
        assert!(!both(&inst));
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let inst = construct_blocks(&BlockSpec::new(3, vec![1, 2]).unwrap());
        for engine in [Engine::Backtrack, Engine::Transversal] {
            assert!(matches!(
                has_proper_coloring(&inst, engine, Budget(1)),
                Err(CheckError::Exhausted(_))
            ));
        }
    }

    #[test]
    fn too_many_colors() {
        let inst = ListInstance::complete(65, 1, 1, vec![vec![64]], vec![vec![0]]);
        assert!(matches!(
            has_proper_coloring(&inst, Engine::Auto, Budget::DEFAULT),
            Err(CheckError::TooManyColors(65))
        ));
    }

    #[test]
    fn explicit_edges_use_backtracking() {
        // a path A0 - B0 - A1 where both A-vertices only have color 0:
        // B0 must avoid 0.
        let inst = ListInstance::with_edges(
            2,
            1,
            2,
            vec![vec![0], vec![0]],
            vec![vec![0, 1]],
            vec![(0, 0), (1, 0)],
        );
        let r = has_proper_coloring(&inst, Engine::Auto, Budget::DEFAULT).unwrap();
        assert_eq!(r.coloring.unwrap().b, vec![1]);
        assert!(matches!(
            has_proper_coloring(&inst, Engine::Transversal, Budget::DEFAULT),
            Err(CheckError::Model(ModelError::NotCompleteBipartite))
        ));
    }

    #[test]
    fn mask_helpers() {
        assert_eq!(mask_of(&[0, 3]), 0b1001);
        assert_eq!(colors_of(0b1001), vec![0, 3]);
    }
}
