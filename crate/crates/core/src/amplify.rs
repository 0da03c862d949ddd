//! Witness amplification.
//!
//! * Blowup `G^⋎r`: A-side `A × [r]`, B-side `B^r`; `(v,i) ~ (v_1..v_r)` iff
//!   `v ~ v_i`. Colors `C × [r]`, `L'((v,i)) = L(v) × {i}` and
//!   `L'((v_1..v_r)) = ⋃_i L(v_i) × {i}`.
//! * Expansion `G^⋏(s^k_A)`: every A-vertex `v` becomes `s^k_A` copies
//!   indexed by `[s]^k_A` with `L'((v,a)) = {(ℓ_j(v), a_j)}` where `ℓ_j(v)`
//!   lists `L(v)` in ascending order; B-lists become `L(v) × [s]`.
//!
//! Both turn a `(k_A, k_B)` witness into a `(k_A, r·k_B)` witness. The
//! product color `(c, i)` (0-based `i`) is stored as `c·r + i`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Adjacency, Color, ListInstance, RegimePoint};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AmplifyError {
    #[error("amplification factor must be at least 1")]
    ZeroFactor,
    #[error("amplified parameter does not fit in 64 bits: {0}")]
    Overflow(String),
    #[error("amplified instance would have {0} vertices")]
    TooLarge(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmplifyKind {
    Blowup,
    Expansion,
}

/// Refuse to materialize instances beyond this many vertices per side.
pub const MAX_PART: u64 = 1 << 22;

fn product_color(c: Color, i: usize, r: usize) -> Color {
    c * r as Color + i as Color
}

/// Visits `[0, r)^len` lexicographically.
fn tuples(len: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = r.checked_pow(len as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut idx| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = idx % r;
            idx /= r;
        }
        t
    })
}

pub fn blowup(instance: &ListInstance, r: usize) -> Result<ListInstance, AmplifyError> {
    if r == 0 {
        return Err(AmplifyError::ZeroFactor);
    }
    let nb = instance.b_count();
    let b_size = (nb as u64).checked_pow(r as u32).filter(|&n| n <= MAX_PART);
    let Some(b_size) = b_size else {
        return Err(AmplifyError::TooLarge(format!("{nb}^{r}")));
    };

    let mut a_lists = Vec::with_capacity(instance.a_count() * r);
    for list in &instance.a_lists {
        for i in 0..r {
            a_lists.push(list.iter().map(|&c| product_color(c, i, r)).collect());
        }
    }
    let b_tuples: Vec<Vec<usize>> = tuples(r, nb).collect();
    debug_assert_eq!(b_tuples.len() as u64, b_size);
    let b_lists = b_tuples
        .iter()
        .map(|t| {
            t.iter()
                .enumerate()
                .flat_map(|(i, &v)| instance.b_lists[v].iter().map(move |&c| product_color(c, i, r)))
                .collect()
        })
        .collect();

    let universe = instance.universe * r;
    let kb = instance.kb * r;
    Ok(match &instance.adjacency {
        Adjacency::Complete => ListInstance::complete(universe, instance.ka, kb, a_lists, b_lists),
        Adjacency::Edges(edges) => {
            let mut adj = vec![vec![false; nb]; instance.a_count()];
            for &(a, b) in edges {
                adj[a][b] = true;
            }
            let mut new_edges = Vec::new();
            for (v, row) in adj.iter().enumerate() {
                for i in 0..r {
                    for (t_idx, t) in b_tuples.iter().enumerate() {
                        if row[t[i]] {
                            new_edges.push((v * r + i, t_idx));
                        }
                    }
                }
            }
            ListInstance::with_edges(universe, instance.ka, kb, a_lists, b_lists, new_edges)
        }
    })
}

pub fn expand(instance: &ListInstance, s: usize) -> Result<ListInstance, AmplifyError> {
    if s == 0 {
        return Err(AmplifyError::ZeroFactor);
    }
    let ka = instance.ka;
    let copies = (s as u64)
        .checked_pow(ka as u32)
        .and_then(|c| c.checked_mul(instance.a_count() as u64))
        .filter(|&n| n <= MAX_PART);
    if copies.is_none() {
        return Err(AmplifyError::TooLarge(format!("{}·{s}^{ka}", instance.a_count())));
    }

    let mut a_lists = Vec::new();
    let mut owner = Vec::new();
    for (v, list) in instance.a_lists.iter().enumerate() {
        for t in tuples(ka, s) {
            a_lists.push(
                list.iter()
                    .zip(&t)
                    .map(|(&c, &i)| product_color(c, i, s))
                    .collect(),
            );
            owner.push(v);
        }
    }
    let b_lists = instance
        .b_lists
        .iter()
        .map(|l| l.iter().flat_map(|&c| (0..s).map(move |i| product_color(c, i, s))).collect())
        .collect();

    let universe = instance.universe * s;
    let kb = instance.kb * s;
    Ok(match &instance.adjacency {
        Adjacency::Complete => ListInstance::complete(universe, ka, kb, a_lists, b_lists),
        Adjacency::Edges(edges) => {
            let mut new_edges = Vec::new();
            for (copy, &v) in owner.iter().enumerate() {
                for &(a, b) in edges {
                    if a == v {
                        new_edges.push((copy, b));
                    }
                }
            }
            ListInstance::with_edges(universe, ka, kb, a_lists, b_lists, new_edges)
        }
    })
}

fn to_u64(x: BigUint) -> Result<u64, AmplifyError> {
    x.to_u64().ok_or_else(|| AmplifyError::Overflow(x.to_string()))
}

/// Parameters after amplification of an unchoosable point:
/// blowup gives `(Δ_A^r, r·Δ_B, k_A, r·k_B)`, expansion by `r^k_A` copies
/// gives `(Δ_A, r^k_A·Δ_B, k_A, r·k_B)`.
pub fn amplify_params(point: RegimePoint, kind: AmplifyKind, r: u64) -> Result<RegimePoint, AmplifyError> {
    if r == 0 {
        return Err(AmplifyError::ZeroFactor);
    }
    let big = BigUint::from;
    let rr = r as u32;
    let (da, db) = match kind {
        AmplifyKind::Blowup => (big(point.delta_a).pow(rr), big(point.delta_b) * r),
        AmplifyKind::Expansion => (
            big(point.delta_a),
            big(r).pow(point.ka.min(u32::MAX as u64) as u32) * point.delta_b,
        ),
    };
    let ka = big(point.ka);
    let kb = big(point.kb) * r;
    Ok(RegimePoint {
        delta_a: to_u64(da)?,
        delta_b: to_u64(db)?,
        ka: to_u64(ka)?,
        kb: to_u64(kb)?,
    })
}

/// `Δ ↦ (6Δ)^r / 6`, exact.
fn six_power(delta: u64, r: u32) -> BigUint {
    (BigUint::from(6u32) * delta).pow(r) / 6u32
}

fn scale_step(point: RegimePoint, r: u32) -> Result<RegimePoint, AmplifyError> {
    Ok(RegimePoint {
        delta_a: to_u64(six_power(point.delta_a, r))?,
        delta_b: to_u64(six_power(point.delta_b, r))?,
        ka: to_u64(BigUint::from(point.ka) * r)?,
        kb: to_u64(BigUint::from(point.kb) * r)?,
    })
}

/// With `r = 2^a 3^b`: `((6Δ_A)^r/6, (6Δ_B)^r/6, r·k_A, r·k_B)`, computed by
/// chaining the `r = 2` step `a` times and the `r = 3` step `b` times
/// (`(6·(6Δ)^s/6)^t/6 = (6Δ)^(st)/6`).
pub fn amplify23_params(point: RegimePoint, a: u32, b: u32) -> Result<RegimePoint, AmplifyError> {
    let mut p = point;
    for _ in 0..a {
        p = scale_step(p, 2)?;
    }
    for _ in 0..b {
        p = scale_step(p, 3)?;
    }
    Ok(p)
}

/// Direct evaluation of the closed form, for cross-checking the chain.
pub fn amplify23_closed_form(point: RegimePoint, a: u32, b: u32) -> Result<RegimePoint, AmplifyError> {
    let r = BigUint::from(2u32).pow(a) * BigUint::from(3u32).pow(b);
    let r32 = r.to_u32().ok_or_else(|| AmplifyError::Overflow(r.to_string()))?;
    if r.is_one() {
        return Ok(point);
    }
    scale_step(point, r32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::xi;
    use crate::checker::{has_proper_coloring, Budget, Engine};
    use crate::constructions::{construct_blocks, BlockSpec};
    use crate::model::ColorSystem;

    fn star() -> ListInstance {
        ListInstance::complete(2, 2, 1, vec![vec![0, 1]], vec![vec![0], vec![1]])
    }

    fn uncolorable(inst: &ListInstance) -> bool {
        !has_proper_coloring(inst, Engine::Transversal, Budget::unlimited())
            .unwrap()
            .colorable()
    }

    fn pt(da: u64, db: u64, ka: u64, kb: u64) -> RegimePoint {
        RegimePoint::new(da, db, ka, kb).unwrap()
    }

    #[test]
    fn blowup_of_star() {
        let out = blowup(&star(), 2).unwrap();
        assert_eq!((out.a_count(), out.b_count(), out.universe, out.kb), (2, 4, 4, 2));
        assert!(out.validate().is_empty());
        assert!(uncolorable(&out));

        let out = blowup(&star(), 3).unwrap();
        assert_eq!((out.a_count(), out.b_count(), out.universe, out.kb), (3, 8, 6, 3));
        assert!(uncolorable(&out));
    }

    #[test]
    fn expand_of_star() {
        let out = expand(&star(), 2).unwrap();
        assert_eq!((out.a_count(), out.b_count(), out.universe, out.kb), (4, 2, 4, 2));
        assert!(uncolorable(&out));
    }

    #[test]
    fn expand_of_block_witness() {
        let w = construct_blocks(&BlockSpec::new(2, vec![2]).unwrap());
        let out = expand(&w, 2).unwrap();
        assert_eq!((out.a_count(), out.b_count(), out.universe, out.kb), (16, 2, 8, 4));
        assert!(uncolorable(&out));
    }

    #[test]
    fn identity_factor() {
        let w = construct_blocks(&BlockSpec::new(2, vec![2]).unwrap());
        assert_eq!(blowup(&w, 1).unwrap(), w);
        assert_eq!(expand(&w, 1).unwrap(), w);
        assert_eq!(blowup(&w, 0), Err(AmplifyError::ZeroFactor));
    }

    #[test]
    fn blowup_keeps_lists_distinct() {
        let w = construct_blocks(&BlockSpec::new(2, vec![1, 1]).unwrap());
        let out = blowup(&w, 2).unwrap();
        let sys = ColorSystem::from_instance(&out).unwrap();
        assert_eq!(sys.edges.len(), out.a_count());
        assert_eq!(sys.family.len(), out.b_count());
    }

    #[test]
    fn blowup_on_explicit_edges() {
        // path A0 - B0 - A1 - B1
        let inst = ListInstance::with_edges(
            3,
            1,
            1,
            vec![vec![0], vec![1]],
            vec![vec![0], vec![2]],
            vec![(0, 0), (1, 0), (1, 1)],
        );
        let out = blowup(&inst, 2).unwrap();
        assert_eq!((out.a_count(), out.b_count()), (4, 4));
        // (A0, copy 0) is adjacent to tuples whose first entry is B0
        let Adjacency::Edges(e) = &out.adjacency else { panic!() };
        assert!(e.contains(&(0, 0)) && e.contains(&(0, 1)) && !e.contains(&(0, 2)));
        assert!(out.validate().is_empty());
    }

    #[test]
    fn params_examples() {
        let p = pt(2, 1, 2, 1);
        assert_eq!(amplify_params(p, AmplifyKind::Blowup, 2).unwrap(), pt(4, 2, 2, 2));
        assert_eq!(amplify_params(p, AmplifyKind::Expansion, 2).unwrap(), pt(2, 4, 2, 2));
        for kind in [AmplifyKind::Blowup, AmplifyKind::Expansion] {
            assert_eq!(amplify_params(p, kind, 1).unwrap(), p);
        }
        assert!(matches!(
            amplify_params(pt(1 << 40, 1, 2, 1), AmplifyKind::Blowup, 2),
            Err(AmplifyError::Overflow(_))
        ));
    }

    #[test]
    fn two_three_chain() {
        let p = pt(2, 1, 2, 1);
        assert_eq!(amplify23_params(p, 1, 0).unwrap(), pt(24, 6, 4, 2));
        assert_eq!(amplify23_params(p, 0, 0).unwrap(), p);
        assert_eq!(
            amplify23_params(p, 1, 1).unwrap(),
            amplify23_params(amplify23_params(p, 1, 0).unwrap(), 0, 1).unwrap()
        );
        for (a, b) in [(0, 1), (1, 1), (2, 0), (2, 1)] {
            assert_eq!(amplify23_params(p, a, b).unwrap(), amplify23_closed_form(p, a, b).unwrap());
        }
        assert!(matches!(amplify23_params(p, 6, 0), Err(AmplifyError::Overflow(_))));
    }

    #[test]
    fn blowup_preserves_xi() {
        for p in [pt(2, 4, 2, 2), pt(3, 7, 3, 2), pt(2, 1, 2, 1), pt(5, 3, 1, 2)] {
            for r in 1..=10 {
                let Ok(q) = amplify_params(p, AmplifyKind::Blowup, r) else { continue };
                let (x, y) = (xi(p), xi(q));
                assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{p} r={r}: {x} vs {y}");
            }
        }
    }
}
