//! Random greedy independent sets and the probability that they avoid a
//! vertex set `S` entirely.
//!
//! The greedy rule visits vertices in some order and keeps a vertex when
//! none of its neighbors was kept before. For a set `S` with outside
//! neighborhood `T`, the kept set misses `S` exactly when every vertex of
//! `S` has a neighbor in `T` visited before it. [`STGraph`] is the bipartite
//! graph between `S` and `T` that decides this event.

mod blocking;
mod deletion;

pub use blocking::{
    counterexample_graph, degree_functional_check, fancy_bound, fancy_bound_exact, p_blocked_exact,
    p_blocked_exact_capped, p_blocked_monte_carlo, product_bound, DegreeFunctional, MonteCarloEstimate,
    DEFAULT_EXACT_CAP,
};
pub use deletion::{max_degree_deletion, random_transversal_search, schedule_bound, DeletionResult, ScheduleBound};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IndepError {
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("{0} vertices exceed the exact-recursion cap of {1}")]
    TooLarge(usize, usize),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("T-vertex {0} has no neighbors")]
    IsolatedT(usize),
    #[error("color system is not 2-uniform")]
    NotGraph,
    #[error("trial count must be positive")]
    NoTrials,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Undirected simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, IndepError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(IndepError::Invalid(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(IndepError::Invalid(format!("loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(IndepError::Invalid(format!("parallel edge ({u},{v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SimpleGraph { n, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Same vertex set with every edge at `v` removed.
    pub fn isolate(&mut self, v: usize) {
        for u in std::mem::take(&mut self.adj[v]) {
            self.adj[u].retain(|&w| w != v);
        }
    }
}

/// Greedy independent set for `order`, returned sorted.
///
/// Panics if `order` is not a permutation of the vertices.
pub fn greedy_independent_set(graph: &SimpleGraph, order: &[usize]) -> Vec<usize> {
    assert!(is_permutation(order, graph.n), "order must be a permutation of the vertices");
    let mut kept = vec![false; graph.n];
    for &v in order {
        if graph.adj[v].iter().all(|&u| !kept[u]) {
            kept[v] = true;
        }
    }
    (0..graph.n).filter(|&v| kept[v]).collect()
}

/// Hypergraph version of the greedy rule: keep a vertex unless it would
/// complete a hyperedge whose other vertices are all kept. With 2-element
/// edges this is [`greedy_independent_set`].
pub fn greedy_independent_set_hyper(vertices: usize, edges: &[Vec<usize>], order: &[usize]) -> Vec<usize> {
    assert!(is_permutation(order, vertices), "order must be a permutation of the vertices");
    let mut kept = vec![false; vertices];
    for &v in order {
        let completes = edges
            .iter()
            .any(|e| e.contains(&v) && e.iter().all(|&u| u == v || kept[u]));
        if !completes {
            kept[v] = true;
        }
    }
    (0..vertices).filter(|&v| kept[v]).collect()
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Bipartite graph between `S` (indices `0..s`) and `T` (indices `0..t`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct STGraph {
    pub s: usize,
    pub t: usize,
    /// `(s-index, t-index)` pairs.
    pub edges: Vec<(usize, usize)>,
}

impl STGraph {
    pub fn new(s: usize, t: usize, mut edges: Vec<(usize, usize)>) -> Result<Self, IndepError> {
        edges.sort_unstable();
        let g = STGraph { s, t, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), IndepError> {
        for &(i, j) in &self.edges {
            if i >= self.s || j >= self.t {
                return Err(IndepError::Invalid(format!("edge ({i},{j}) out of range")));
            }
        }
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(IndepError::Invalid("parallel edges".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, IndepError> {
        let g: STGraph = serde_json::from_str(text)?;
        STGraph::new(g.s, g.t, g.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn s_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.s];
        for &(i, _) in &self.edges {
            d[i] += 1;
        }
        d
    }

    pub fn profile(&self) -> DegreeProfile {
        let s_deg = self.s_degrees();
        let mut d = vec![0; self.t];
        let mut big_d = vec![0; self.t];
        for &(i, j) in &self.edges {
            d[j] += 1;
            big_d[j] += s_deg[i];
        }
        DegreeProfile {
            delta_t: d.iter().copied().max().unwrap_or(0),
            edge_count: self.edges.len(),
            d,
            big_d,
        }
    }

    /// Whole graph as a [`SimpleGraph`] with `S` first, then `T`.
    pub fn as_simple(&self) -> SimpleGraph {
        let edges: Vec<_> = self.edges.iter().map(|&(i, j)| (i, self.s + j)).collect();
        SimpleGraph::new(self.s + self.t, &edges).expect("validated bipartite graph")
    }

    /// Disjoint union of `copies` copies of `K_{a,a}`.
    pub fn biclique_union(a: usize, copies: usize) -> STGraph {
        let mut edges = Vec::new();
        for c in 0..copies {
            for i in 0..a {
                for j in 0..a {
                    edges.push((c * a + i, c * a + j));
                }
            }
        }
        STGraph::new(a * copies, a * copies, edges).expect("in range")
    }

    pub fn matching(m: usize) -> STGraph {
        STGraph::new(m, m, (0..m).map(|i| (i, i)).collect()).expect("in range")
    }
}

/// Degrees of the `T`-vertices: `d_i`, the sum `D_i` of their neighbors'
/// degrees, the maximum `Δ_T` and `|E|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeProfile {
    pub d: Vec<usize>,
    #[serde(rename = "D")]
    pub big_d: Vec<usize>,
    pub delta_t: usize,
    pub edge_count: usize,
}
