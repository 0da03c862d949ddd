use super::{check_size, colors_of, mask_of, Budget, CheckError, ColoringCheck, Mask, NodeCounter, MAX_COLORS};
use crate::model::{Color, ColorSystem, Coloring, ListInstance, ModelError};

/// Search for `I` containing no hyperedge and meeting every family set.
///
/// Branches on the unhit family set with the fewest admissible colors. After
/// a color joins `I`, every color that would complete a hyperedge is
/// excluded; sibling branches exclude the colors already tried.
pub(crate) struct TransversalSearch<'a> {
    edges: &'a [Mask],
    family: &'a [Mask],
    counter: NodeCounter,
}

impl<'a> TransversalSearch<'a> {
    pub fn new(edges: &'a [Mask], family: &'a [Mask], budget: Budget) -> Self {
        TransversalSearch { edges, family, counter: NodeCounter::new(budget) }
    }

    pub fn nodes(&self) -> u64 {
        self.counter.used
    }

    /// `Ok(Some(I))`, `Ok(None)` when no transversal exists, `Err(nodes)`
    /// on budget exhaustion.
    pub fn run(&mut self) -> Result<Option<Mask>, u64> {
        // Single-color hyperedges can never be in I.
        let excluded = self
            .edges
            .iter()
            .filter(|e| e.count_ones() == 1)
            .fold(0, |x, e| x | e);
        if self.edges.contains(&0) {
            return Ok(None);
        }
        self.search(0, excluded).ok_or(self.counter.used)
    }

    fn search(&mut self, chosen: Mask, mut excluded: Mask) -> Option<Option<Mask>> {
        if !self.counter.tick() {
            return None;
        }
        let mut target: Option<Mask> = None;
        for &f in self.family {
            if f & chosen != 0 {
                continue;
            }
            let cand = f & !excluded;
            if cand == 0 {
                return Some(None);
            }
            if target.is_none_or(|t| cand.count_ones() < t.count_ones()) {
                target = Some(cand);
            }
        }
        let Some(cand) = target else {
            return Some(Some(chosen));
        };
        for c in colors_of(cand) {
            let bit: Mask = 1 << c;
            if excluded & bit != 0 {
                continue;
            }
            let next = chosen | bit;
            let mut next_excluded = excluded;
            for &e in self.edges {
                if e & bit != 0 {
                    let rest = e & !next;
                    if rest.count_ones() == 1 {
                        next_excluded |= rest;
                    }
                }
            }
            match self.search(next, next_excluded) {
                None => return None,
                Some(Some(found)) => return Some(Some(found)),
                Some(None) => excluded |= bit,
            }
        }
        Some(None)
    }
}

/// An independent set of `H` meeting every member of `F`, if one exists.
pub fn independent_transversal(system: &ColorSystem) -> Result<Option<Vec<Color>>, CheckError> {
    if system.vertices > MAX_COLORS {
        return Err(CheckError::TooManyColors(system.vertices));
    }
    let edges: Vec<Mask> = system.edges.iter().map(|e| mask_of(e)).collect();
    let family: Vec<Mask> = system.family.iter().map(|f| mask_of(f)).collect();
    let found = TransversalSearch::new(&edges, &family, Budget::unlimited())
        .run()
        .expect("unlimited budget");
    Ok(found.map(colors_of))
}

/// Proper coloring of a complete bipartite instance through its color
/// hypergraph: B takes colors inside `I`, A takes colors outside `I`.
pub fn transversal_coloring(instance: &ListInstance, budget: Budget) -> Result<ColoringCheck, CheckError> {
    if !instance.is_complete() {
        return Err(ModelError::NotCompleteBipartite.into());
    }
    check_size(instance)?;
    let edges: Vec<Mask> = instance.a_lists.iter().map(|l| mask_of(l)).collect();
    let family: Vec<Mask> = instance.b_lists.iter().map(|l| mask_of(l)).collect();
    let mut search = TransversalSearch::new(&edges, &family, budget);
    let found = search.run().map_err(CheckError::Exhausted)?;
    let nodes = search.nodes();
    let coloring = found.map(|set| Coloring {
        a: edges.iter().map(|&e| (e & !set).trailing_zeros()).collect(),
        b: family.iter().map(|&f| (f & set).trailing_zeros()).collect(),
    });
    debug_assert!(coloring.as_ref().is_none_or(|c| c.is_proper_for(instance)));
    Ok(ColoringCheck { coloring, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_containment() {
        let sys = ColorSystem::new(2, vec![vec![0, 1]], vec![vec![0], vec![1]]);
        assert_eq!(independent_transversal(&sys).unwrap(), None);
    }

    #[test]
    fn edgeless_hypergraph() {
        let sys = ColorSystem::new(4, vec![], vec![vec![0, 1], vec![2], vec![1, 3]]);
        let i = independent_transversal(&sys).unwrap().unwrap();
        for f in &sys.family {
            assert!(f.iter().any(|c| i.contains(c)));
        }
    }

    #[test]
    fn biclique_parts() {
        let sys = ColorSystem::new(
            4,
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
            vec![vec![0, 1], vec![2, 3]],
        );
        assert_eq!(independent_transversal(&sys).unwrap(), None);
    }

    #[test]
    fn singleton_edges_are_excluded() {
        let sys = ColorSystem::new(3, vec![vec![0]], vec![vec![0, 1]]);
        assert_eq!(independent_transversal(&sys).unwrap(), Some(vec![1]));
    }
}
