use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{IndepError, STGraph};

/// Largest `|S| + |T|` accepted by [`p_blocked_exact`].
pub const DEFAULT_EXACT_CAP: usize = 20;

pub fn p_blocked_exact(graph: &STGraph) -> Result<BigRational, IndepError> {
    p_blocked_exact_capped(graph, DEFAULT_EXACT_CAP)
}

/// Probability, over a uniform order of `S ⊔ T`, that every `S`-vertex has
/// a `T`-neighbor before it.
///
/// Conditioning on the first vertex: an `S`-vertex first fails, a
/// `T`-vertex `v` first settles `N(v)`, leaving a uniform order on the rest.
/// So `p(W) = 1/|W| · Σ_{v ∈ T∩W} p(W ∖ ({v} ∪ N(v)))`, memoized on `W`.
pub fn p_blocked_exact_capped(graph: &STGraph, cap: usize) -> Result<BigRational, IndepError> {
    graph.validate()?;
    let n = graph.s + graph.t;
    if n > cap.min(63) {
        return Err(IndepError::TooLarge(n, cap));
    }
    let mut s_nbrs = vec![0u64; graph.s];
    let mut t_nbrs = vec![0u64; graph.t];
    for &(i, j) in &graph.edges {
        s_nbrs[i] |= 1 << (graph.s + j);
        t_nbrs[j] |= 1 << i;
    }
    let mut solver = Blocking { s: graph.s, s_nbrs, t_nbrs, memo: HashMap::new() };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(solver.p(all))
}

struct Blocking {
    s: usize,
    s_nbrs: Vec<u64>,
    t_nbrs: Vec<u64>,
    memo: HashMap<u64, BigRational>,
}

impl Blocking {
    fn p(&mut self, alive: u64) -> BigRational {
        let s_mask = (1u64 << self.s) - 1;
        let s_alive = alive & s_mask;
        if s_alive == 0 {
            return BigRational::one();
        }
        if (0..self.s).any(|i| s_alive >> i & 1 == 1 && self.s_nbrs[i] & alive == 0) {
            return BigRational::zero();
        }
        if let Some(v) = self.memo.get(&alive) {
            return v.clone();
        }
        let mut total = BigRational::zero();
        let mut rest = alive & !s_mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let next = alive & !(1 << v) & !self.t_nbrs[v - self.s];
            total += self.p(next);
        }
        total /= BigInt::from(alive.count_ones());
        self.memo.insert(alive, total.clone());
        total
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub std_error: f64,
}

impl MonteCarloEstimate {
    pub fn within_sigmas(&self, exact: f64, sigmas: f64) -> bool {
        (self.estimate - exact).abs() <= sigmas * self.std_error.max(f64::EPSILON)
    }
}

/// Runs the greedy rule on `S ⊔ T` in uniform random orders and counts the
/// orders whose independent set misses `S`.
///
/// Each hit is checked against the blocking condition: every `S`-vertex has
/// a `T`-neighbor earlier in the order.
pub fn p_blocked_monte_carlo(graph: &STGraph, trials: u64, seed: u64) -> Result<MonteCarloEstimate, IndepError> {
    graph.validate()?;
    if trials == 0 {
        return Err(IndepError::NoTrials);
    }
    let simple = graph.as_simple();
    let n = simple.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut kept = vec![false; n];
    let mut position = vec![0; n];
    let mut hits = 0u64;
    for _ in 0..trials {
        order.shuffle(&mut rng);
        kept.fill(false);
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos;
            if simple.neighbors(v).iter().all(|&u| !kept[u]) {
                kept[v] = true;
            }
        }
        if kept[..graph.s].iter().all(|&k| !k) {
            hits += 1;
            for i in 0..graph.s {
                assert!(
                    simple.neighbors(i).iter().any(|&u| u >= graph.s && position[u] < position[i]),
                    "S-vertex {i} missed without an earlier T-neighbor"
                );
            }
        }
    }
    let estimate = hits as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        trials,
        hits,
        estimate,
        std_error: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
    })
}

/// `(1 + |S|Δ_T/|E|)^(−|S|/Δ_T)`, an upper bound on [`p_blocked_exact`] for
/// graphs without isolated `S`-vertices.
pub fn fancy_bound(graph: &STGraph) -> Result<f64, IndepError> {
    let p = graph.profile();
    if p.edge_count == 0 {
        return Err(IndepError::EmptyGraph);
    }
    let (s, dt, e) = (graph.s as f64, p.delta_t as f64, p.edge_count as f64);
    Ok((1.0 + s * dt / e).powf(-s / dt))
}

/// [`fancy_bound`] as an exact rational; `None` unless `Δ_T` divides `|S|`.
pub fn fancy_bound_exact(graph: &STGraph) -> Result<Option<BigRational>, IndepError> {
    let p = graph.profile();
    if p.edge_count == 0 {
        return Err(IndepError::EmptyGraph);
    }
    if !graph.s.is_multiple_of(p.delta_t) {
        return Ok(None);
    }
    let e = BigInt::from(p.edge_count);
    let base = BigRational::new(e.clone() + BigInt::from(graph.s * p.delta_t), e);
    let exp = (graph.s / p.delta_t) as i32;
    Ok(Some(base.pow(-exp)))
}

/// `Π_i (1 + f_i)^(−f_i/d_i)` over non-isolated `T`-vertices, where
/// `f_i = Σ_{u ∈ N(v_i)} 1/deg u`. Not an upper bound in general; see
/// [`counterexample_graph`].
pub fn product_bound(graph: &STGraph) -> f64 {
    let s_deg = graph.s_degrees();
    let mut f = vec![0.0; graph.t];
    let mut d = vec![0usize; graph.t];
    for &(i, j) in &graph.edges {
        f[j] += 1.0 / s_deg[i] as f64;
        d[j] += 1;
    }
    f.iter()
        .zip(&d)
        .filter(|(_, &d)| d > 0)
        .map(|(&f, &d)| (1.0 + f).powf(-f / d as f64))
        .product()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeFunctional {
    /// `Σ_i d_i²/D_i`.
    #[serde(serialize_with = "ser_ratio")]
    pub value: BigRational,
    pub s: usize,
    pub holds: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&r.to_string())
}

/// Exact `Σ_i d_i²/D_i` compared with `|S|`.
pub fn degree_functional_check(graph: &STGraph) -> Result<DegreeFunctional, IndepError> {
    let p = graph.profile();
    if let Some(j) = p.d.iter().position(|&d| d == 0) {
        return Err(IndepError::IsolatedT(j));
    }
    let value = p
        .d
        .iter()
        .zip(&p.big_d)
        .map(|(&d, &big)| BigRational::new(BigInt::from(d * d), BigInt::from(big)))
        .fold(BigRational::zero(), |acc, x| acc + x);
    let holds = value <= BigRational::from_integer(BigInt::from(graph.s));
    Ok(DegreeFunctional { value, s: graph.s, holds })
}

/// `S = {a1..a4}`, `T = {b1..b5}`: each `a_i` has a private pendant and all
/// four share the hub `b3`. The product of local factors underestimates the
/// blocking probability here.
pub fn counterexample_graph() -> STGraph {
    // a1b1, a2b2, a3b4, a4b5, a1b3, a2b3, a3b3, a4b3 (0-based)
    let edges = vec![(0, 0), (1, 1), (2, 3), (3, 4), (0, 2), (1, 2), (2, 2), (3, 2)];
    STGraph::new(4, 5, edges).expect("fixed graph is valid")
}
