use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{IndepError, SimpleGraph};
use crate::model::{Color, ColorSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionResult {
    /// Number of deletions `i`.
    pub steps: usize,
    /// Deleted vertices in deletion order.
    pub deleted: Vec<usize>,
    /// Maximum degrees `Δ_0..=Δ_i` seen before each step.
    pub max_degrees: Vec<usize>,
    /// Edge count of the input.
    pub initial_edges: usize,
    /// Input with every deleted vertex isolated.
    pub pruned: SimpleGraph,
}

/// Repeatedly deletes a maximum-degree vertex (lowest id on ties) until the
/// current maximum degree `Δ_i` satisfies `Δ_i·k² ≤ (2k−2i−1)·|E|`, with
/// `|E|` the input edge count. Since the right-hand sides over `i < k` sum
/// to `|E|`, this stops with `i < k`.
pub fn max_degree_deletion(graph: &SimpleGraph, k: usize) -> DeletionResult {
    assert!(k >= 1, "k must be positive");
    let e0 = graph.edge_count() as u128;
    let kk = (k * k) as u128;
    let mut g = graph.clone();
    let mut deleted = Vec::new();
    let mut max_degrees = Vec::new();
    for i in 0..k {
        let delta = g.max_degree();
        max_degrees.push(delta);
        if delta as u128 * kk <= (2 * (k - i) - 1) as u128 * e0 {
            return DeletionResult { steps: i, deleted, max_degrees, initial_edges: e0 as usize, pruned: g };
        }
        let v = (0..g.vertex_count()).find(|&v| g.degree(v) == delta).expect("max degree is attained");
        g.isolate(v);
        deleted.push(v);
    }
    unreachable!("deleted edges would exceed the edge count")
}

/// Looks for an independent set of a 2-uniform `H` meeting every family
/// set: prunes `H` with [`max_degree_deletion`] (`k` = family set size),
/// keeps deleted vertices out, and samples greedy independent sets of the
/// rest in random orders. A returned set is a valid certificate; `None`
/// proves nothing.
pub fn random_transversal_search(
    system: &ColorSystem,
    restarts: u64,
    seed: u64,
) -> Result<Option<Vec<Color>>, IndepError> {
    if system.edges.iter().any(|e| e.len() != 2) {
        return Err(IndepError::NotGraph);
    }
    let n = system.vertices;
    let edges: Vec<(usize, usize)> = system.edges.iter().map(|e| (e[0] as usize, e[1] as usize)).collect();
    let graph = SimpleGraph::new(n, &edges)?;
    let k = system.family.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let pruned = max_degree_deletion(&graph, k);

    let mut alive: Vec<usize> = (0..n).filter(|v| !pruned.deleted.contains(v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept = vec![false; n];
    for _ in 0..restarts {
        alive.shuffle(&mut rng);
        kept.fill(false);
        for &v in &alive {
            if pruned.pruned.neighbors(v).iter().all(|&u| !kept[u]) {
                kept[v] = true;
            }
        }
        if system.family.iter().all(|f| f.iter().any(|&c| kept[c as usize])) {
            return Ok(Some((0..n).filter(|&v| kept[v]).map(|v| v as Color).collect()));
        }
    }
    Ok(None)
}

/// The blocking bound at the deletion schedule's worst case: `|S| = k−i`,
/// `Δ_T = 2(k−i)Δ_B/k²`, `|E| = Δ_B(k−i)²/k²`. The base collapses to 3 and
/// the exponent to `k²/(2Δ_B)` for every `i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScheduleBound {
    pub bound: f64,
    pub closed_form: f64,
}

pub fn schedule_bound(k: u64, i: u64, delta_b: u64) -> ScheduleBound {
    assert!(i < k && delta_b > 0);
    let (k, i, db) = (k as f64, i as f64, delta_b as f64);
    let s = k - i;
    let delta_t = 2.0 * s * db / (k * k);
    let e = db * s * s / (k * k);
    ScheduleBound {
        bound: (1.0 + s * delta_t / e).powf(-s / delta_t),
        closed_form: 3f64.powf(-k * k / (2.0 * db)),
    }
}
