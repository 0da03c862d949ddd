//! End-to-end acceptance checks. Each check returns a [`CriterionReport`]
//! rather than panicking so that the CLI `selftest` command and the
//! integration tests can share them.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amplify::{amplify_params, blowup, expand, AmplifyKind};
use crate::bounds::{alpha, classify, count_double_exp_fixed_points, ln_xim_prime_upper, verify_tedious, xim_bounds, ClassVerdict};
use crate::checker::{decide_choosable, has_proper_coloring, Budget, Engine, Verdict};
use crate::constructions::{construct_blocks, BlockSpec};
use crate::indepset::{
    counterexample_graph, fancy_bound_exact, p_blocked_exact, p_blocked_monte_carlo, product_bound, STGraph,
};
use crate::model::{ListInstance, RegimePoint};
use crate::oracle;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {} ({:.2}s): {}", self.id, self.name, self.seconds, self.detail)
    }
}

struct Tracker {
    start: Instant,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tracker {
    fn new() -> Self {
        Tracker { start: Instant::now(), failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(mut self, id: u32, name: &'static str, limit: Option<Duration>) -> CriterionReport {
        let elapsed = self.start.elapsed();
        if let Some(limit) = limit {
            self.check(elapsed <= limit, format!("took {:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()));
        }
        let passed = self.failures.is_empty();
        let detail = if passed { self.notes.join("; ") } else { self.failures.join("; ") };
        CriterionReport { id, name, passed, detail, seconds: elapsed.as_secs_f64() }
    }
}

fn colorable(instance: &ListInstance, engine: Engine) -> Option<bool> {
    has_proper_coloring(instance, engine, Budget::DEFAULT).ok().map(|c| c.colorable())
}

fn point(da: u64, db: u64, ka: u64, kb: u64) -> RegimePoint {
    RegimePoint { delta_a: da, delta_b: db, ka, kb }
}

/// Compositions of `n` into positive parts.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn block_witnesses_uncolorable() -> CriterionReport {
    let mut t = Tracker::new();
    let mut count = 0;
    for ka in [2, 3] {
        for total in 1..=3 {
            for a in compositions(total) {
                let spec = BlockSpec::new(ka, a.clone()).expect("positive parts");
                let inst = construct_blocks(&spec);
                for engine in [Engine::Backtrack, Engine::Transversal] {
                    let got = colorable(&inst, engine);
                    t.check(got == Some(false), format!("k_A={ka} a={a:?} {engine:?}: {got:?}"));
                }
                count += 1;
            }
        }
    }
    t.note(format!("{count} block instances rejected by both engines"));
    t.finish(1, "block witnesses are uncolorable", Some(Duration::from_secs(10)))
}

pub fn classic_frontier_point() -> CriterionReport {
    let mut t = Tracker::new();
    match decide_choosable(point(2, 4, 2, 2), Budget::DEFAULT) {
        Ok(d) => match &d.verdict {
            Verdict::Unchoosable(w) => {
                t.check(w.regime_point() == Some(point(2, 4, 2, 2)), "witness has the wrong shape");
                t.check(colorable(w, Engine::Backtrack) == Some(false), "witness is colorable");
                t.note(format!("(2,4,2,2) Unchoosable after {} nodes", d.nodes_explored));
            }
            v => t.check(false, format!("(2,4,2,2) gave {}", v.tag())),
        },
        Err(e) => t.check(false, format!("(2,4,2,2): {e}")),
    }
    match decide_choosable(point(2, 3, 2, 2), Budget::DEFAULT) {
        Ok(d) => {
            t.check(d.verdict == Verdict::Choosable, format!("(2,3,2,2) gave {}", d.verdict.tag()));
            t.note(format!("(2,3,2,2) Choosable after {} nodes", d.nodes_explored));
        }
        Err(e) => t.check(false, format!("(2,3,2,2): {e}")),
    }
    t.check(!oracle::choosable_over_universe(point(2, 4, 2, 2), 4), "oracle finds (2,4,2,2) choosable");
    t.check(oracle::choosable_over_universe(point(2, 3, 2, 2), 6), "oracle finds (2,3,2,2) unchoosable");
    t.note("unreduced enumeration agrees");
    t.finish(2, "classic frontier point", Some(Duration::from_secs(60)))
}

pub fn amplification_soundness() -> CriterionReport {
    let mut t = Tracker::new();
    let star = ListInstance::complete(2, 2, 1, vec![vec![0, 1]], vec![vec![0], vec![1]]);
    let base = point(2, 1, 2, 1);
    let cases = [
        ("blowup r=2", blowup(&star, 2), AmplifyKind::Blowup),
        ("expand s=2", expand(&star, 2), AmplifyKind::Expansion),
    ];
    for (label, inst, kind) in cases {
        let Ok(inst) = inst else {
            t.check(false, format!("{label} failed"));
            continue;
        };
        let want = amplify_params(base, kind, 2).ok();
        let got = inst.regime_point();
        t.check(got == want, format!("{label}: parameters {got:?} vs {want:?}"));
        for engine in [Engine::Backtrack, Engine::Transversal] {
            t.check(colorable(&inst, engine) == Some(false), format!("{label} colorable by {engine:?}"));
        }
        t.note(format!("{label}: K_{{{},{}}} with k_B={}", inst.a_count(), inst.b_count(), inst.kb));
    }
    t.finish(3, "amplified witnesses stay unchoosable", Some(Duration::from_secs(5)))
}

pub fn blocking_probability_engine() -> CriterionReport {
    let mut t = Tracker::new();
    let g = counterexample_graph();
    match p_blocked_exact(&g) {
        Ok(exact) => {
            let brute = oracle::p_blocked_all_orders(&g);
            t.check(exact == brute, format!("recursion {exact} vs all orders {brute}"));
            let product = (product_bound(&g) * 1e9).round() / 1e9;
            let product_q = BigRational::from_f64(product).expect("finite");
            t.check(exact > product_q, format!("{exact} not above product {product}"));
            let fancy = fancy_bound_exact(&g).ok().flatten();
            let third = BigRational::new(1.into(), 3.into());
            t.check(fancy.as_ref() == Some(&third), format!("bound {fancy:?} is not 1/3"));
            t.check(exact <= third, format!("{exact} above 1/3"));
            let value = exact.to_f64().unwrap_or(f64::NAN);
            match p_blocked_monte_carlo(&g, 1_000_000, 20_240_601) {
                Ok(mc) => {
                    t.check(mc.within_sigmas(value, 4.0), format!("Monte Carlo {} ± {}", mc.estimate, mc.std_error));
                    t.note(format!("exact {exact} ≈ {value:.6}, product {product:.9}, MC {:.5}", mc.estimate));
                }
                Err(e) => t.check(false, e.to_string()),
            }
        }
        Err(e) => t.check(false, e.to_string()),
    }
    t.finish(4, "blocking probability engine", Some(Duration::from_secs(30)))
}

pub fn equality_family() -> CriterionReport {
    let mut t = Tracker::new();
    for a in 1..=3 {
        for j in 1..=2 {
            let g = STGraph::biclique_union(a, j);
            let exact = p_blocked_exact(&g).ok();
            let bound = fancy_bound_exact(&g).ok().flatten();
            t.check(exact.is_some() && exact == bound, format!("a={a} j={j}: {exact:?} vs {bound:?}"));
        }
    }
    t.note("exact equality on 6 biclique unions");
    t.finish(5, "bound is tight on biclique unions", None)
}

pub fn pair_interval() -> CriterionReport {
    let mut t = Tracker::new();
    let b = xim_bounds(2);
    let (lo, hi) = (0.5 * 3f64.ln(), 2f64.ln());
    t.check((b.lo - lo).abs() <= 1e-12, format!("lo {} vs {lo}", b.lo));
    t.check((b.hi - hi).abs() <= 1e-12, format!("hi {} vs {hi}", b.hi));
    let (grid, _) = oracle::alpha_grid(2, 1_000_000);
    t.check(grid <= lo, format!("grid alpha {grid} above {lo}"));
    t.check((alpha(2).alpha - grid).abs() <= 1e-9, "alpha(2) disagrees with the grid");
    t.note(format!("[{:.12}, {:.12}], alpha(2) = {grid:.10}", b.lo, b.hi));
    t.finish(6, "interval for k = 2", None)
}

pub fn seven_seven_arithmetic() -> CriterionReport {
    let mut t = Tracker::new();
    let h = 7.0 * 7f64.ln().powi(2) / 27.0;
    let cap = 3f64.ln().powi(2);
    t.check(h < cap, format!("{h} not below {cap}"));
    let b = xim_bounds(3);
    t.check((b.hi - h).abs() <= 1e-12, format!("upper end {} is not {h}", b.hi));
    t.note(format!("{h:.5} < {cap:.5}, upper end from {}", b.hi_source));
    t.finish(7, "K_{7,7} tightening for k = 3", None)
}

pub fn prime_slope() -> CriterionReport {
    let mut t = Tracker::new();
    let target = 2f64.ln() + 2f64.ln().ln();
    let slope = ln_xim_prime_upper(200) / 200.0;
    t.check(
        (slope - target).abs() <= 0.05,
        format!("slope {slope:.6} at k=200 is {:.4} from {target:.5}", (slope - target).abs()),
    );
    t.note(format!("slope {slope:.6} vs {target:.5}"));
    t.finish(8, "upper-bound slope at k = 200", None)
}

pub fn appendix_fuzz() -> CriterionReport {
    let mut t = Tracker::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for _ in 0..100_000 {
        let a: f64 = rng.gen();
        let b: f64 = rng.gen();
        let beta = 10.0 * rng.gen::<f64>();
        let gamma = a.max(b) + 10.0 * (1.0 - rng.gen::<f64>());
        if !verify_tedious(a, b, beta, gamma).map(|c| c.holds).unwrap_or(false) {
            bad += 1;
        }
    }
    t.check(bad == 0, format!("{bad} inequality samples failed"));
    let mut worst = 0;
    for _ in 0..10_000 {
        let a = 10.0 * (1.0 - rng.gen::<f64>());
        let b = 10.0 * (1.0 - rng.gen::<f64>());
        worst = worst.max(count_double_exp_fixed_points(a, b).unwrap_or(usize::MAX));
    }
    t.check(worst <= 3, format!("found {worst} fixed points"));
    t.note(format!("10^5 inequality samples hold; at most {worst} fixed points in 10^4 samples"));
    t.finish(9, "appendix inequalities", Some(Duration::from_secs(20)))
}

pub fn classifier_consistency() -> CriterionReport {
    let mut t = Tracker::new();
    let mut decided = 0;
    for ka in 1..=2 {
        for kb in 1..=2 {
            let mut grid = [[None; 6]; 4];
            for da in 1..=3u64 {
                for db in 1..=5u64 {
                    let p = point(da, db, ka, kb);
                    let verdict = match decide_choosable(p, Budget::DEFAULT) {
                        Ok(d) => d.verdict,
                        Err(e) => {
                            t.check(false, format!("{p}: {e}"));
                            continue;
                        }
                    };
                    let unchoosable = match verdict {
                        Verdict::Choosable => false,
                        Verdict::Unchoosable(_) => true,
                        Verdict::Exhausted => {
                            t.check(false, format!("{p}: budget exhausted"));
                            continue;
                        }
                    };
                    decided += 1;
                    grid[da as usize][db as usize] = Some(unchoosable);
                    let c = classify(p);
                    let contradicts = match c.verdict {
                        ClassVerdict::Choosable => unchoosable,
                        ClassVerdict::Unchoosable => !unchoosable,
                        ClassVerdict::Unknown => false,
                    };
                    t.check(!contradicts, format!("{p}: classify {:?} by {} vs exact", c.verdict, c.rule.name()));
                }
            }
            for da in 1..=3 {
                for db in 1..=5 {
                    if grid[da][db] != Some(true) {
                        continue;
                    }
                    if da < 3 {
                        t.check(grid[da + 1][db] == Some(true), format!("({da}→{},{db}) k=({ka},{kb})", da + 1));
                    }
                    if db < 5 {
                        t.check(grid[da][db + 1] == Some(true), format!("({da},{db}→{}) k=({ka},{kb})", db + 1));
                    }
                }
            }
        }
    }
    t.note(format!("{decided} grid points decided, no contradictions, monotone"));
    t.finish(10, "classifier agrees with exact decisions", None)
}

pub type Criterion = fn() -> CriterionReport;

pub const CRITERIA: [Criterion; 10] = [
    block_witnesses_uncolorable,
    classic_frontier_point,
    amplification_soundness,
    blocking_probability_engine,
    equality_family,
    pair_interval,
    seven_seven_arithmetic,
    prime_slope,
    appendix_fuzz,
    classifier_consistency,
];

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| c()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_of_three() {
        assert_eq!(compositions(3).len(), 4);
        assert_eq!(compositions(1), vec![vec![1]]);
    }
}
