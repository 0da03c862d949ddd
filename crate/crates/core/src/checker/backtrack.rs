use super::{check_size, colors_of, mask_of, Budget, CheckError, ColoringCheck, Mask, NodeCounter};
use crate::model::{Color, Coloring, ListInstance};

/// Vertices `0..|A|` are the A-side, `|A|..|A|+|B|` the B-side.
struct Backtracker {
    neighbors: Vec<Vec<usize>>,
    counter: NodeCounter,
}

impl Backtracker {
    /// Returns `Some(true)` with `colors` filled in on success, `Some(false)`
    /// when this subtree has no coloring, `None` when the budget ran out.
    fn search(&mut self, avail: &mut Vec<Mask>, colors: &mut Vec<Option<Color>>) -> Option<bool> {
        if !self.counter.tick() {
            return None;
        }

        // A vertex with an available color that no uncolored neighbor could
        // still use is colored without branching.
        let mut forced = Vec::new();
        loop {
            let mut progress = false;
            for v in 0..colors.len() {
                if colors[v].is_some() {
                    continue;
                }
                let mut blocked: Mask = 0;
                for &u in &self.neighbors[v] {
                    if colors[u].is_none() {
                        blocked |= avail[u];
                    }
                }
                let free = avail[v] & !blocked;
                if free != 0 {
                    colors[v] = Some(free.trailing_zeros());
                    forced.push(v);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }

        let mut pick: Option<(u32, usize)> = None;
        for v in 0..colors.len() {
            if colors[v].is_none() {
                let n = avail[v].count_ones();
                if pick.is_none_or(|(best, _)| n < best) {
                    pick = Some((n, v));
                }
            }
        }

        let result = match pick {
            None => Some(true),
            Some((0, _)) => Some(false),
            Some((_, v)) => self.branch(v, avail, colors),
        };
        if result != Some(true) {
            for v in forced {
                colors[v] = None;
            }
        }
        result
    }

    fn branch(&mut self, v: usize, avail: &mut Vec<Mask>, colors: &mut Vec<Option<Color>>) -> Option<bool> {
        for c in colors_of(avail[v]) {
            let bit = 1 << c;
            let touched: Vec<usize> = self.neighbors[v]
                .iter()
                .copied()
                .filter(|&u| colors[u].is_none() && avail[u] & bit != 0)
                .collect();
            for &u in &touched {
                avail[u] &= !bit;
            }
            colors[v] = Some(c);
            let r = self.search(avail, colors);
            if r != Some(false) {
                return r;
            }
            colors[v] = None;
            for &u in &touched {
                avail[u] |= bit;
            }
        }
        Some(false)
    }
}

/// Direct backtracking over vertex colorings with forward checking,
/// fewest-remaining-colors vertex order and ascending color order.
pub fn backtrack_coloring(instance: &ListInstance, budget: Budget) -> Result<ColoringCheck, CheckError> {
    check_size(instance)?;
    let na = instance.a_count();
    let (adj_a, adj_b) = instance.neighborhoods();
    let neighbors: Vec<Vec<usize>> = adj_a
        .into_iter()
        .chain(adj_b.into_iter().map(|ns| ns.into_iter().collect()))
        .enumerate()
        .map(|(v, ns)| if v < na { ns.into_iter().map(|b| na + b).collect() } else { ns })
        .collect();
    let mut avail: Vec<Mask> = instance
        .a_lists
        .iter()
        .chain(&instance.b_lists)
        .map(|l| mask_of(l))
        .collect();
    let mut colors = vec![None; avail.len()];
    let mut bt = Backtracker { neighbors, counter: NodeCounter::new(budget) };
    match bt.search(&mut avail, &mut colors) {
        None => Err(CheckError::Exhausted(bt.counter.used)),
        Some(false) => Ok(ColoringCheck { coloring: None, nodes: bt.counter.used }),
        Some(true) => {
            let all: Vec<Color> = colors.into_iter().map(|c| c.expect("all colored")).collect();
            let coloring = Coloring { a: all[..na].to_vec(), b: all[na..].to_vec() };
            debug_assert!(coloring.is_proper_for(instance));
            Ok(ColoringCheck { coloring: Some(coloring), nodes: bt.counter.used })
        }
    }
}
