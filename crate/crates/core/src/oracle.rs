//! Slow reference implementations used to cross-check the fast engines.
//! Everything here enumerates the raw search space with no pruning or
//! symmetry reduction, so it only scales to toy sizes.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::indepset::STGraph;
use crate::model::{Color, ColorSystem, Coloring, ListInstance, RegimePoint};

/// Fraction of all `(|S|+|T|)!` orders in which every `S`-vertex has an
/// earlier `T`-neighbor.
pub fn p_blocked_all_orders(graph: &STGraph) -> BigRational {
    let n = graph.s + graph.t;
    assert!(n <= 10, "all-orders enumeration is limited to 10 vertices");
    let mut t_nbrs_of_s = vec![Vec::new(); graph.s];
    for &(i, j) in &graph.edges {
        t_nbrs_of_s[i].push(graph.s + j);
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut pos = vec![0usize; n];
    let mut hits = 0u64;
    let mut total = 0u64;
    let mut visit = |order: &[usize]| {
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        total += 1;
        if (0..graph.s).all(|i| t_nbrs_of_s[i].iter().any(|&u| pos[u] < pos[i])) {
            hits += 1;
        }
    };
    heap_permutations(&mut order, n, &mut visit);
    BigRational::new(BigInt::from(hits), BigInt::from(total))
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}

fn mask(list: &[Color]) -> u64 {
    list.iter().fold(0, |m, &c| m | 1 << c)
}

/// Smallest (as a bitmask) independent set of `H` meeting every family set,
/// found by trying all `2^n` subsets.
pub fn transversal_by_subsets(system: &ColorSystem) -> Option<Vec<Color>> {
    assert!(system.vertices <= 24, "subset enumeration is limited to 24 colors");
    let edges: Vec<u64> = system.edges.iter().map(|e| mask(e)).collect();
    let family: Vec<u64> = system.family.iter().map(|f| mask(f)).collect();
    (0u64..1 << system.vertices)
        .find(|&i| edges.iter().all(|&e| e & !i != 0) && family.iter().all(|&f| f & i != 0))
        .map(|i| (0..system.vertices as Color).filter(|&c| i >> c & 1 == 1).collect())
}

/// A proper coloring found by trying every combination of list choices.
pub fn coloring_by_product(instance: &ListInstance) -> Option<Coloring> {
    let (na, nb) = (instance.a_count(), instance.b_count());
    let lists: Vec<&Vec<Color>> = instance.a_lists.iter().chain(&instance.b_lists).collect();
    let edges = instance.edges();
    let mut choice = vec![0usize; lists.len()];
    loop {
        let color = |v: usize| lists[v][choice[v]];
        if edges.iter().all(|&(a, b)| color(a) != color(na + b)) {
            return Some(Coloring {
                a: (0..na).map(color).collect(),
                b: (na..na + nb).map(color).collect(),
            });
        }
        // odometer step
        let mut v = 0;
        loop {
            if v == lists.len() {
                return None;
            }
            choice[v] += 1;
            if choice[v] < lists[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Calls `visit` on every multiset of `size` elements drawn from `items`.
fn multisets(items: &[u64], size: usize, visit: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn go(items: &[u64], start: usize, cur: &mut Vec<u64>, size: usize, visit: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if cur.len() == size {
            return visit(cur);
        }
        for i in start..items.len() {
            cur.push(items[i]);
            let keep_going = go(items, i, cur, size, visit);
            cur.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    go(items, 0, &mut Vec::new(), size, visit)
}

/// Whether every list assignment drawn from `universe` colors admits a
/// proper coloring of `K_{Δ_B, Δ_A}`. Enumerates every multiset of A-lists
/// and B-lists and every candidate color set for B.
pub fn choosable_over_universe(point: RegimePoint, universe: usize) -> bool {
    assert!(universe <= 12, "assignment enumeration is limited to 12 colors");
    let (na, nb) = (point.delta_b as usize, point.delta_a as usize);
    let (ka, kb) = (point.ka as usize, point.kb as usize);
    if ka > universe || kb > universe {
        return true;
    }
    let a_opts = subsets(universe, ka);
    let b_opts = subsets(universe, kb);
    let all_sets: Vec<u64> = (0u64..1 << universe).collect();
    multisets(&a_opts, na, &mut |a_lists| {
        let independent: Vec<u64> = all_sets
            .iter()
            .copied()
            .filter(|&i| a_lists.iter().all(|&e| e & !i != 0))
            .collect();
        multisets(&b_opts, nb, &mut |b_lists| {
            independent.iter().any(|&i| b_lists.iter().all(|&f| f & i != 0))
        })
    })
}

/// `max u·f(u)^(k−1)` over `points + 1` equally spaced `u ∈ [0, 1]`, with
/// `f(u) = 1 − u + u ln u`. Returns `(value, argmax)`.
pub fn alpha_grid(k: u32, points: usize) -> (f64, f64) {
    let f = |u: f64| if u == 0.0 { 1.0 } else { 1.0 - u + u * u.ln() };
    (0..=points)
        .map(|i| {
            let u = i as f64 / points as f64;
            (u * f(u).powi(k as i32 - 1), u)
        })
        .fold((f64::NEG_INFINITY, 0.0), |best, c| if c.0 > best.0 { c } else { best })
}
