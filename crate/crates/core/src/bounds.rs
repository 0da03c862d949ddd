//! Numeric threshold machinery around
//! `ξ(Δ_A, Δ_B, k_A, k_B) = Δ_B · ln(Δ_A)^(k_A−1) / k_B^k_A`.
//!
//! All logarithms are natural.

use serde::Serialize;
use thiserror::Error;

use crate::model::RegimePoint;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("argument outside the domain: {0}")]
    Domain(String),
}

/// `f(u) = 1 − u + u·ln u` on `[0, 1]`, with `f(0) = 1`.
pub fn entropy_f(u: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&u) {
        return Err(BoundsError::Domain(format!("f(u) needs 0 <= u <= 1, got {u}")));
    }
    Ok(entropy_f_unchecked(u))
}

fn entropy_f_unchecked(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        1.0 - u + u * u.ln()
    }
}

/// `u · f(u)^(k−1)`, the quantity maximized by [`alpha`].
pub fn alpha_objective(k: u32, u: f64) -> f64 {
    u * entropy_f_unchecked(u).powi(k as i32 - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlphaResult {
    pub k: u32,
    pub alpha: f64,
    #[serde(rename = "uStar")]
    pub u_star: f64,
}

const ALPHA_GRID: usize = 10_000;

/// `α(k) = max_{u∈[0,1]} u·f(u)^(k−1)`.
///
/// The objective is not assumed unimodal: a dense grid locates the best
/// cell, then golden-section search refines inside the two neighboring
/// cells.
pub fn alpha(k: u32) -> AlphaResult {
    if k <= 1 {
        return AlphaResult { k: 1, alpha: 1.0, u_star: 1.0 };
    }
    let step = 1.0 / ALPHA_GRID as f64;
    let (best_i, _) = (0..=ALPHA_GRID)
        .map(|i| (i, alpha_objective(k, i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });

    let mut lo = best_i.saturating_sub(1) as f64 * step;
    let mut hi = ((best_i + 1).min(ALPHA_GRID)) as f64 * step;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = alpha_objective(k, x1);
    let mut f2 = alpha_objective(k, x2);
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = alpha_objective(k, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = alpha_objective(k, x1);
        }
    }
    let grid_u = best_i as f64 * step;
    let candidates = [(grid_u, alpha_objective(k, grid_u)), (x1, f1), (x2, f2)];
    let (u_star, alpha) = candidates
        .into_iter()
        .fold((0.0, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
    AlphaResult { k, alpha, u_star }
}

/// `ξ(Δ_A, Δ_B, k_A, k_B)`; `ln(Δ_A)^0 = 1` when `k_A = 1`.
pub fn xi(point: RegimePoint) -> f64 {
    let ln_a = (point.delta_a as f64).ln();
    point.delta_b as f64 * ln_a.powi(point.ka as i32 - 1) / (point.kb as f64).powi(point.ka as i32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassVerdict {
    Choosable,
    Unchoosable,
    Unknown,
}

/// Which rule settled a [`BoundReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassRule {
    /// `Δ_A < k_A` or `Δ_B < k_B`.
    SmallDegree,
    /// `ξ < α(k_A)`.
    XiBelowAlpha,
    /// `Δ_A ≥ k_A`, `Δ_B ≥ k_B` and
    /// `Δ_B ln(Δ_A)^(k_A−1) > 2^(2k_A−1) ln(k_A)^(k_A−1) k_B^k_A`.
    BlockThreshold,
    /// `k_A = 2`, `Δ_B ≥ k_B` and `Δ_B ln Δ_A > 1.4 k_B²`.
    BlockThresholdPairs,
    None,
}

impl ClassRule {
    pub fn name(&self) -> &'static str {
        match self {
            ClassRule::SmallDegree => "small-degree",
            ClassRule::XiBelowAlpha => "xi-below-alpha",
            ClassRule::BlockThreshold => "block-threshold",
            ClassRule::BlockThresholdPairs => "block-threshold-pairs",
            ClassRule::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub point: RegimePoint,
    pub xi: f64,
    pub verdict: ClassVerdict,
    pub rule: ClassRule,
}

fn block_threshold_holds(p: RegimePoint) -> bool {
    if p.delta_a < p.ka || p.delta_b < p.kb {
        return false;
    }
    if p.ka == 1 {
        return p.delta_b as f64 > 2.0 * p.kb as f64;
    }
    if p.delta_a == 1 {
        return false;
    }
    // compare logarithms so that large points do not overflow
    let ka = p.ka as f64;
    let lhs = (p.delta_b as f64).ln() + (ka - 1.0) * (p.delta_a as f64).ln().ln();
    let rhs = (2.0 * ka - 1.0) * 2f64.ln() + (ka - 1.0) * ka.ln().ln() + ka * (p.kb as f64).ln();
    lhs > rhs
}

fn pair_threshold_holds(p: RegimePoint) -> bool {
    p.ka == 2
        && p.delta_b >= p.kb
        && p.delta_b as f64 * (p.delta_a as f64).ln() > 1.4 * (p.kb as f64).powi(2)
}

/// Applies the sufficient conditions in a fixed order and reports the first
/// that fires. `Unknown` means none applies.
pub fn classify(point: RegimePoint) -> BoundReport {
    let x = xi(point);
    let (verdict, rule) = if point.delta_a < point.ka || point.delta_b < point.kb {
        (ClassVerdict::Choosable, ClassRule::SmallDegree)
    } else if x < alpha(point.ka.min(u32::MAX as u64) as u32).alpha {
        (ClassVerdict::Choosable, ClassRule::XiBelowAlpha)
    } else if block_threshold_holds(point) {
        (ClassVerdict::Unchoosable, ClassRule::BlockThreshold)
    } else if pair_threshold_holds(point) {
        (ClassVerdict::Unchoosable, ClassRule::BlockThresholdPairs)
    } else {
        (ClassVerdict::Unknown, ClassRule::None)
    };
    BoundReport { point, xi: x, verdict, rule }
}

/// Bounds on the smallest `ξ` of an unchoosable `K_{Δ_B,Δ_A}` at fixed `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XimInterval {
    pub k: u32,
    pub lo: f64,
    pub hi: f64,
    #[serde(rename = "loSource")]
    pub lo_source: String,
    #[serde(rename = "hiSource")]
    pub hi_source: String,
}

/// `ξ` of the side-swapped block witness for `k = a·r`: the
/// `(k,k)`-unchoosable `K_{a^k r, k^r}` read with parts exchanged.
pub fn swapped_block_xi(a: u32, r: u32) -> f64 {
    let k = (a * r) as f64;
    let delta_b = (a as f64).powf(k) * r as f64;
    let delta_a = k.powi(r as i32);
    delta_a * delta_b.ln().powf(k - 1.0) / k.powf(k)
}

pub fn xim_bounds(k: u32) -> XimInterval {
    if k <= 1 {
        return XimInterval {
            k: 1,
            lo: 1.0,
            hi: 1.0,
            lo_source: "single-color-lists".into(),
            hi_source: "single-color-lists".into(),
        };
    }
    let kf = k as f64;
    let a = alpha(k);
    let (mut lo, mut lo_source) = (a.alpha, "alpha".to_string());
    if k == 2 && 0.5 * 3f64.ln() > lo {
        lo = 0.5 * 3f64.ln();
        lo_source = "greedy-blocking".into();
    }
    let (mut hi, mut hi_source) = (kf.ln().powi(k as i32 - 1), "block-witness".to_string());
    if k == 3 {
        let h = 7.0 * 7f64.ln().powi(2) / 27.0;
        if h < hi {
            hi = h;
            hi_source = "k7-7-witness".into();
        }
    }
    for r in 2..=k {
        if !k.is_multiple_of(r) {
            continue;
        }
        let a = k / r;
        if a < r {
            break;
        }
        let h = swapped_block_xi(a, r);
        if h < hi {
            hi = h;
            hi_source = format!("swapped-block-witness(a={a},r={r})");
        }
    }
    XimInterval { k, lo, hi, lo_source, hi_source }
}

/// `ln` of `k² 2^(k+1) ((k+1) ln 2 + 2 ln k)^k / k^k`.
pub fn ln_xim_prime_upper(k: u32) -> f64 {
    let kf = k as f64;
    2.0 * kf.ln() + (kf + 1.0) * 2f64.ln() + kf * ((kf + 1.0) * 2f64.ln() + 2.0 * kf.ln()).ln()
        - kf * kf.ln()
}

/// Upper bound on `ξ'_m(k)` from the `(k,k)`-unchoosable `K_{Δ,Δ}` with
/// `Δ = k² 2^(k+1)`. Overflows to `inf` for `k` beyond ~900; use
/// [`ln_xim_prime_upper`] there.
pub fn xim_prime_upper(k: u32) -> f64 {
    ln_xim_prime_upper(k).exp()
}

/// `ξ_m(k)·ln k ≤ ξ'_m(k)`, evaluated with the lower end of [`xim_bounds`].
pub fn xim_prime_lower(k: u32) -> f64 {
    xim_bounds(k).lo * (k as f64).ln()
}

/// `p = (1 + ε/k_A) ln Δ_A / (f(u₀) k_B)`; `None` for `k_A = 1` where
/// `f(u₀) = 0`.
pub fn reserve_probability_formula(point: RegimePoint, epsilon: f64) -> Option<f64> {
    if point.ka <= 1 {
        return None;
    }
    let a = alpha(point.ka as u32);
    let f0 = entropy_f_unchecked(a.u_star);
    Some((1.0 + epsilon / point.ka as f64) * (point.delta_a as f64).ln() / (f0 * point.kb as f64))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TediousCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Relative slack allowed when comparing the two sides in floating point.
pub const TEDIOUS_RTOL: f64 = 1e-12;

/// Evaluates
/// `(1 + β(γ−a)/(γ−b))^(−(γ−a)) ≤ (1+β)^(−γ) (1 + β a²/b)`
/// for `a, b, β, γ ≥ 0`, `a ≤ 1`, `γ > max(a, b)`. `a²/b` is read as `0`
/// when `a = b = 0` and `+∞` when only `b = 0`.
pub fn verify_tedious(a: f64, b: f64, beta: f64, gamma: f64) -> Result<TediousCheck, BoundsError> {
    let finite = [a, b, beta, gamma].iter().all(|x| x.is_finite());
    if !finite || a < 0.0 || b < 0.0 || beta < 0.0 || a > 1.0 || gamma <= a.max(b) {
        return Err(BoundsError::Domain(format!(
            "need a,b,beta >= 0, a <= 1, gamma > max(a,b); got a={a}, b={b}, beta={beta}, gamma={gamma}"
        )));
    }
    let lhs = (1.0 + beta * (gamma - a) / (gamma - b)).powf(-(gamma - a));
    let ratio = if b == 0.0 {
        if a == 0.0 { 0.0 } else { f64::INFINITY }
    } else {
        a * a / b
    };
    let rhs = (1.0 + beta).powf(-gamma) * (1.0 + beta * ratio);
    let holds = lhs <= rhs * (1.0 + TEDIOUS_RTOL);
    Ok(TediousCheck { lhs, rhs, holds })
}

/// Scan resolution for [`double_exp_fixed_points`], as a fraction of `b`.
pub const FIXED_POINT_STEPS: usize = 10_000;

/// Roots of `g(g(x)) = x` for `g(x) = b e^(−a x)`, found by sign-change
/// scanning of `[0, b]` (which contains all of them) and bisection.
/// Tangential roots without a sign change are not detected.
pub fn double_exp_fixed_points(a: f64, b: f64) -> Result<Vec<f64>, BoundsError> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(BoundsError::Domain(format!("need a, b > 0; got a={a}, b={b}")));
    }
    let g = |x: f64| b * (-a * x).exp();
    let h = |x: f64| g(g(x)) - x;
    let step = b / FIXED_POINT_STEPS as f64;
    let mut roots = Vec::new();
    let mut x0 = 0.0;
    let mut h0 = h(x0);
    if h0 == 0.0 {
        roots.push(x0);
    }
    for j in 1..=FIXED_POINT_STEPS {
        let x1 = if j == FIXED_POINT_STEPS { b } else { j as f64 * step };
        let h1 = h(x1);
        if h1 == 0.0 {
            roots.push(x1);
        } else if h0 != 0.0 && (h0 < 0.0) != (h1 < 0.0) {
            let (mut lo, mut hi, neg_lo) = (x0, x1, h0 < 0.0);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if (h(mid) < 0.0) == neg_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        h0 = h1;
    }
    Ok(roots)
}

pub fn count_double_exp_fixed_points(a: f64, b: f64) -> Result<usize, BoundsError> {
    double_exp_fixed_points(a, b).map(|r| r.len())
}

/// The three inequalities chained in the composite-`k` argument:
/// `k ln(k)² < (k−1)²`, `ln(k)² + 2 ln k < 2(k−1)` and `k − 1 > ln k`.
pub fn composite_chain_holds(k: u32) -> bool {
    let kf = k as f64;
    let l = kf.ln();
    kf * l * l < (kf - 1.0).powi(2) && l * l + 2.0 * l < 2.0 * (kf - 1.0) && kf - 1.0 > l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(da: u64, db: u64, ka: u64, kb: u64) -> RegimePoint {
        RegimePoint::new(da, db, ka, kb).unwrap()
    }

    #[test]
    fn f_values() {
        assert_eq!(entropy_f(1.0).unwrap(), 0.0);
        assert_eq!(entropy_f(0.0).unwrap(), 1.0);
        let e = std::f64::consts::E;
        assert!((entropy_f(1.0 / e).unwrap() - (1.0 - 2.0 / e)).abs() < 1e-15);
        assert!((entropy_f(1.0 / e).unwrap() - 0.26424).abs() < 1e-5);
        assert!(entropy_f(-0.1).is_err());
        assert!(entropy_f(1.5).is_err());
    }

    #[test]
    fn alpha_small_cases() {
        assert_eq!(alpha(1).alpha, 1.0);
        let a2 = alpha(2);
        assert!(a2.alpha > 0.0 && a2.alpha <= 2f64.ln());
        assert!(a2.u_star > 0.0 && a2.u_star < 1.0);
        // stationary: derivative of u f(u) is f(u) + u ln u = 1 - u + 2u ln u
        let d = 1.0 - a2.u_star + 2.0 * a2.u_star * a2.u_star.ln();
        assert!(d.abs() < 1e-6, "{d}");
    }

    /// Values frozen from an independent 10^6-point grid scan.
    #[test]
    fn alpha_matches_dense_grid() {
        for (k, want) in [(2, 0.101_816_094_397_254_27), (3, 0.047_958_052_415_866_34)] {
            let got = alpha(k).alpha;
            assert!(got >= want - 1e-12 && got - want < 1e-9, "k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn alpha_large_k_sanity() {
        let a = alpha(50).alpha;
        assert!(a >= 1.0 / (std::f64::consts::E.powi(2) * 50f64.powi(3)));
        for k in 1..=40 {
            assert!(alpha(k).alpha <= 1.0);
        }
    }

    #[test]
    fn xi_values() {
        assert!((xi(pt(2, 4, 2, 2)) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(xi(pt(9, 3, 1, 6)), 0.5);
        let k77 = 7.0 * 7f64.ln().powi(2) / 27.0;
        assert!((xi(pt(7, 7, 3, 3)) - k77).abs() < 1e-12);
        assert!((k77 - 0.98170).abs() < 1e-5);
        assert_eq!(xi(pt(1, 5, 2, 1)), 0.0);
        let cs = xi(pt(4, 8, 2, 4));
        assert!((cs - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let r = classify(pt(3, 9, 2, 1));
        assert_eq!((r.verdict, r.rule), (ClassVerdict::Unchoosable, ClassRule::BlockThreshold));
        assert!((r.xi - 9.0 * 3f64.ln()).abs() < 1e-12);

        let r = classify(pt(5, 1, 1, 2));
        assert_eq!(r.verdict, ClassVerdict::Choosable);
        assert!(matches!(r.rule, ClassRule::SmallDegree | ClassRule::XiBelowAlpha));
        assert_eq!(r.xi, 0.5);

        let r = classify(pt(2, 3, 2, 2));
        assert_ne!(r.verdict, ClassVerdict::Unchoosable);
    }

    #[test]
    fn classify_pair_rule() {
        // Δ_B ln Δ_A = 20 ln 3 ≈ 21.97 > 1.4·9, below the general threshold 8 ln2 · 9 ≈ 49.9
        let r = classify(pt(3, 20, 2, 3));
        assert_eq!(r.rule, ClassRule::BlockThresholdPairs);
    }

    #[test]
    fn xim_interval_k2() {
        let b = xim_bounds(2);
        assert!((b.lo - 0.5 * 3f64.ln()).abs() < 1e-12);
        assert!((b.hi - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn xim_interval_k3() {
        let b = xim_bounds(3);
        assert!((b.hi - 7.0 * 7f64.ln().powi(2) / 27.0).abs() < 1e-12);
        assert!(b.hi < 3f64.ln().powi(2));
        assert_eq!(b.hi_source, "k7-7-witness");
    }

    #[test]
    fn xim_interval_k4_uses_swapped_blocks() {
        let b = xim_bounds(4);
        let direct = 16.0 * 32f64.ln().powi(3) / 256.0;
        assert!((b.hi - direct).abs() < 1e-12);
        assert!(b.hi < 4f64.ln().powi(3));
    }

    #[test]
    fn xim_sandwich() {
        for k in 1..=20 {
            let b = xim_bounds(k);
            assert!(b.lo <= b.hi, "k={k}");
            assert!(alpha(k).alpha <= b.lo + 1e-12);
        }
    }

    #[test]
    fn xim_prime_values() {
        // 4·8·(5 ln 2)^2 / 4
        let want = 8.0 * (5.0 * 2f64.ln()).powi(2);
        assert!((xim_prime_upper(2) - want).abs() < 1e-9);
        assert!(xim_prime_upper(2) >= xim_prime_lower(2));
        let slope = |k: u32| ln_xim_prime_upper(k) / k as f64;
        let target = 2f64.ln() + 2f64.ln().ln();
        assert!((slope(200) - 0.461_375_326).abs() < 1e-6);
        assert!((slope(10_000) - target).abs() < 0.005);
        assert!((slope(1_000_000) - target).abs() < 1e-4);
    }

    #[test]
    fn tedious_examples() {
        let c = verify_tedious(0.3, 0.7, 0.0, 2.0).unwrap();
        assert_eq!(c.lhs, 1.0);
        assert_eq!(c.rhs, 1.0);
        assert!(c.holds);
        assert!(verify_tedious(0.5, 0.5, 1.0, 2.0).unwrap().holds);
        assert!(verify_tedious(1.5, 0.5, 1.0, 2.0).is_err());
        assert!(verify_tedious(0.5, 0.5, 1.0, 0.5).is_err());
        assert!(verify_tedious(0.5, 0.0, 1.0, 2.0).unwrap().holds);
        assert!(verify_tedious(0.0, 0.0, 1.0, 2.0).unwrap().holds);
    }

    #[test]
    fn fixed_points_of_unit_exponential() {
        let roots = double_exp_fixed_points(1.0, 1.0).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 0.567_143_290_4).abs() < 1e-9);
    }

    #[test]
    fn fixed_points_with_steep_decay() {
        for a in [5.0, 20.0, 100.0] {
            let n = count_double_exp_fixed_points(a, 1.0).unwrap();
            assert!((1..=3).contains(&n), "a={a}: {n}");
        }
        // large a·b gives the 2-cycle {≈0, ≈b} plus the fixed point of g
        assert_eq!(count_double_exp_fixed_points(20.0, 1.0).unwrap(), 3);
        assert!(count_double_exp_fixed_points(0.0, 1.0).is_err());
    }

    #[test]
    fn composite_chain() {
        for k in 2..=100 {
            assert!(composite_chain_holds(k), "k={k}");
        }
    }

    #[test]
    fn reserve_probability_helper() {
        assert_eq!(reserve_probability_formula(pt(5, 5, 1, 2), 0.1), None);
        let p = reserve_probability_formula(pt(1000, 5, 2, 40), 0.1).unwrap();
        assert!(p > 0.0 && p < 1.0);
    }
}
