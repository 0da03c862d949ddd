//! Exhaustive choosability of `K_{Δ_B, Δ_A}`.
//!
//! `K_{Δ_B,Δ_A}` is not `(k_A,k_B)`-choosable iff some `k_A`-uniform
//! hypergraph `H` with `Δ_B` distinct edges admits a family of `Δ_A` sets of
//! size `k_B` such that every independent set of `H` misses one of them.
//!
//! Reductions used here:
//!
//! * Only colors covered by some edge matter. A color outside every edge can
//!   be added to any independent set, so a family set containing one is
//!   always hit. Hence `|C| ≤ k_A·Δ_B`.
//! * Adding edges or family sets can only destroy transversals, so it
//!   suffices to look at exactly `Δ_B` distinct edges and at most `Δ_A`
//!   family sets (padding afterwards).
//! * For a fixed `H` it is enough to defeat the maximal independent sets:
//!   a family set `F` defeats `I` iff `F ⊆ C \ I`. Deciding whether `Δ_A`
//!   sets defeat all of them is a small set-cover search.
//!
//! Hypergraphs are enumerated through their incidence structure: each color
//! is the mask of edges containing it, `H` is the sorted multiset of these
//! masks with every column summing to `k_A`. Relabeling colors does not
//! change the multiset, relabeling edges permutes mask bits; a multiset is
//! kept only when it is the lexicographic minimum over all edge permutations.

use serde::{Serialize, Serializer};

use super::{Budget, CheckError, Mask, NodeCounter, MAX_COLORS};
use crate::model::{Color, ListInstance, RegimePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Choosable,
    /// Carries a list assignment that admits no proper coloring.
    Unchoosable(ListInstance),
    Exhausted,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Choosable => "Choosable",
            Verdict::Unchoosable(_) => "Unchoosable",
            Verdict::Exhausted => "Exhausted",
        }
    }

    pub fn witness(&self) -> Option<&ListInstance> {
        match self {
            Verdict::Unchoosable(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecideRule {
    /// `Δ_A < k_A` or `Δ_B < k_B`.
    TrivialRegion,
    /// `k_A = 1`: unchoosable iff `Δ_B ≥ k_B`.
    SingleColorLists,
    Exhaustive,
}

impl DecideRule {
    pub fn name(&self) -> &'static str {
        match self {
            DecideRule::TrivialRegion => "trivial-region",
            DecideRule::SingleColorLists => "single-color-lists",
            DecideRule::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub point: RegimePoint,
    pub verdict: Verdict,
    pub rule: DecideRule,
    pub nodes_explored: u64,
}

impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            tag: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<&'a ListInstance>,
            #[serde(rename = "nodesExplored")]
            nodes_explored: u64,
            rule: &'static str,
        }
        Repr {
            tag: self.verdict.tag(),
            witness: self.verdict.witness(),
            nodes_explored: self.nodes_explored,
            rule: self.rule.name(),
        }
        .serialize(s)
    }
}

pub fn decide_choosable(point: RegimePoint, budget: Budget) -> Result<Decision, CheckError> {
    let RegimePoint { delta_a, delta_b, ka, kb } = point;
    let done = |verdict, rule, nodes_explored| Decision { point, verdict, rule, nodes_explored };

    if delta_a < ka || delta_b < kb {
        return Ok(done(Verdict::Choosable, DecideRule::TrivialRegion, 0));
    }
    if ka == 1 {
        // Δ_B ≥ k_B here: A-vertices occupy colors 0..Δ_B one each, every
        // B-vertex gets {0..k_B}.
        if delta_b as usize > MAX_COLORS {
            return Err(CheckError::TooManyColors(delta_b as usize));
        }
        let a_lists = (0..delta_b as Color).map(|c| vec![c]).collect();
        let b_lists = vec![(0..kb as Color).collect(); delta_a as usize];
        let w = ListInstance::complete(delta_b as usize, 1, kb as usize, a_lists, b_lists);
        return Ok(done(Verdict::Unchoosable(w), DecideRule::SingleColorLists, 0));
    }

    let max_colors = ka.saturating_mul(delta_b);
    if delta_b >= 64 || max_colors > MAX_COLORS as u64 {
        return Err(CheckError::TooManyColors(max_colors.min(usize::MAX as u64) as usize));
    }
    let mut e = Enumerator {
        edges: delta_b as usize,
        ka: ka as usize,
        kb: kb as usize,
        family_limit: delta_a.min(usize::MAX as u64) as usize,
        counter: NodeCounter::new(budget),
        perms: permutations(delta_b as usize),
        masks: Vec::new(),
        counts: vec![0; delta_b as usize],
        found: None,
    };
    let completed = e.generate(1);
    let nodes = e.counter.used;
    let verdict = match (completed, e.found) {
        (_, Some((edges, family))) => {
            Verdict::Unchoosable(witness_instance(&edges, &family, ka as usize, kb as usize, delta_a as usize))
        }
        (true, None) => Verdict::Choosable,
        (false, None) => Verdict::Exhausted,
    };
    Ok(done(verdict, DecideRule::Exhaustive, nodes))
}

struct Enumerator {
    edges: usize,
    ka: usize,
    kb: usize,
    family_limit: usize,
    counter: NodeCounter,
    /// Edge permutations used for the lexicographic-minimum test; `None`
    /// when there are too many to list and isomorph rejection is skipped.
    perms: Option<Vec<Vec<usize>>>,
    /// Sorted incidence masks, one per color.
    masks: Vec<Mask>,
    counts: Vec<usize>,
    found: Option<(Vec<Mask>, Vec<Mask>)>,
}

impl Enumerator {
    /// Returns false when the budget ran out. Stops early once a witness is
    /// stored in `found`.
    fn generate(&mut self, min_mask: Mask) -> bool {
        if !self.counter.tick() {
            return false;
        }
        if self.counts.iter().all(|&c| c == self.ka) {
            return self.leaf();
        }
        let open: Mask = (0..self.edges)
            .filter(|&i| self.counts[i] < self.ka)
            .fold(0, |m, i| m | (1 << i));
        let mut mask = min_mask;
        while mask < (1 << self.edges) {
            if mask & !open == 0 {
                self.push(mask);
                let ok = self.generate(mask);
                self.pop(mask);
                if !ok {
                    return false;
                }
                if self.found.is_some() {
                    return true;
                }
            }
            mask += 1;
        }
        true
    }

    fn push(&mut self, mask: Mask) {
        self.masks.push(mask);
        for i in 0..self.edges {
            if mask >> i & 1 == 1 {
                self.counts[i] += 1;
            }
        }
    }

    fn pop(&mut self, mask: Mask) {
        self.masks.pop();
        for i in 0..self.edges {
            if mask >> i & 1 == 1 {
                self.counts[i] -= 1;
            }
        }
    }

    fn is_lex_min(&self) -> bool {
        let Some(perms) = &self.perms else {
            return true;
        };
        let mut image = vec![0 as Mask; self.masks.len()];
        for p in perms {
            for (dst, &m) in image.iter_mut().zip(&self.masks) {
                *dst = (0..self.edges).filter(|&i| m >> i & 1 == 1).fold(0, |acc, i| acc | (1 << p[i]));
            }
            image.sort_unstable();
            if image < self.masks {
                return false;
            }
        }
        true
    }

    fn leaf(&mut self) -> bool {
        // Edge i as a set of colors (positions in `masks`).
        let edge_sets: Vec<Mask> = (0..self.edges)
            .map(|i| {
                self.masks
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m >> i & 1 == 1)
                    .fold(0, |acc, (p, _)| acc | (1 << p))
            })
            .collect();
        let mut sorted = edge_sets.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return true;
        }
        if !self.is_lex_min() {
            return true;
        }
        let n = self.masks.len();
        let Some(complements) = maximal_independent_complements(&edge_sets, n, &mut self.counter) else {
            return false;
        };
        if complements.iter().any(|t| (t.count_ones() as usize) < self.kb) {
            return true;
        }
        let mut chosen = Vec::new();
        match cover(&complements, self.kb, self.family_limit, &mut chosen, &mut self.counter) {
            None => false,
            Some(true) => {
                self.found = Some((edge_sets, chosen));
                true
            }
            Some(false) => true,
        }
    }
}

fn permutations(m: usize) -> Option<Vec<Vec<usize>>> {
    if m > 8 {
        return None;
    }
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    Some(out)
}

/// Complements `C \ I` of all maximal independent sets `I` of the
/// hypergraph with the given edges on colors `0..n`. `None` on budget
/// exhaustion.
fn maximal_independent_complements(edges: &[Mask], n: usize, counter: &mut NodeCounter) -> Option<Vec<Mask>> {
    fn rec(
        c: usize,
        set: Mask,
        edges: &[Mask],
        n: usize,
        counter: &mut NodeCounter,
        out: &mut Vec<Mask>,
    ) -> bool {
        if !counter.tick() {
            return false;
        }
        if c == n {
            let full: Mask = if n == 64 { !0 } else { (1 << n) - 1 };
            let maximal = (0..n).all(|x| {
                let bit = 1 << x;
                set & bit != 0 || edges.iter().any(|&e| e & bit != 0 && e & !(set | bit) == 0)
            });
            if maximal {
                out.push(full & !set);
            }
            return true;
        }
        let with = set | (1 << c);
        if !edges.iter().any(|&e| e & !with == 0) && !rec(c + 1, with, edges, n, counter, out) {
            return false;
        }
        rec(c + 1, set, edges, n, counter, out)
    }
    let mut out = Vec::new();
    rec(0, 0, edges, n, counter, &mut out).then_some(out)
}

/// Picks at most `limit` sets of size `k`, each inside some complement, so
/// that every complement contains one of them. `None` on budget exhaustion.
fn cover(
    complements: &[Mask],
    k: usize,
    limit: usize,
    chosen: &mut Vec<Mask>,
    counter: &mut NodeCounter,
) -> Option<bool> {
    if !counter.tick() {
        return None;
    }
    let uncovered = complements
        .iter()
        .filter(|&&t| !chosen.iter().any(|&f| f & !t == 0))
        .min_by_key(|t| t.count_ones());
    let Some(&target) = uncovered else {
        return Some(true);
    };
    if chosen.len() == limit {
        return Some(false);
    }
    for f in subsets_of_size(target, k) {
        chosen.push(f);
        match cover(complements, k, limit, chosen, counter) {
            Some(false) => {
                chosen.pop();
            }
            other => return other,
        }
    }
    Some(false)
}

/// All `k`-subsets of `set`, in increasing numeric order.
fn subsets_of_size(set: Mask, k: usize) -> Vec<Mask> {
    let bits: Vec<u32> = super::colors_of(set);
    let mut out = Vec::new();
    fn rec(bits: &[u32], start: usize, k: usize, acc: Mask, out: &mut Vec<Mask>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..bits.len() {
            if bits.len() - i < k {
                break;
            }
            rec(bits, i + 1, k - 1, acc | (1 << bits[i]), out);
        }
    }
    rec(&bits, 0, k, 0, &mut out);
    out.sort_unstable();
    out
}

fn witness_instance(edges: &[Mask], family: &[Mask], ka: usize, kb: usize, delta_a: usize) -> ListInstance {
    let n = edges.iter().fold(0, |m, &e| m | e).count_ones() as usize;
    let mut b: Vec<Mask> = family.to_vec();
    if b.len() < delta_a {
        let full: Mask = if n == 64 { !0 } else { (1 << n) - 1 };
        for f in subsets_of_size(full, kb) {
            if b.len() == delta_a {
                break;
            }
            if !b.contains(&f) {
                b.push(f);
            }
        }
    }
    while b.len() < delta_a {
        b.push(*b.last().expect("cover is nonempty"));
    }
    ListInstance::complete(
        n,
        ka,
        kb,
        edges.iter().map(|&e| super::colors_of(e)).collect(),
        b.into_iter().map(super::colors_of).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::{has_proper_coloring, Engine};

    fn decide(da: u64, db: u64, ka: u64, kb: u64) -> Decision {
        decide_choosable(RegimePoint::new(da, db, ka, kb).unwrap(), Budget::DEFAULT).unwrap()
    }

    fn assert_witness(d: &Decision) {
        let w = d.verdict.witness().expect("witness");
        assert!(w.validate().is_empty());
        assert_eq!(w.regime_point(), Some(d.point));
        let r = has_proper_coloring(w, Engine::Backtrack, Budget::unlimited()).unwrap();
        assert!(!r.colorable());
    }

    #[test]
    fn two_four_two_two_is_unchoosable() {
        let d = decide(2, 4, 2, 2);
        assert_eq!(d.verdict.tag(), "Unchoosable");
        assert_eq!(d.rule, DecideRule::Exhaustive);
        assert_witness(&d);
    }

    #[test]
    fn trivial_region() {
        let d = decide(1, 100, 2, 1);
        assert_eq!(d.verdict, Verdict::Choosable);
        assert_eq!(d.rule, DecideRule::TrivialRegion);
    }

    #[test]
    fn two_three_two_two_is_choosable() {
        assert_eq!(decide(2, 3, 2, 2).verdict, Verdict::Choosable);
    }

    #[test]
    fn single_color_lists() {
        let d = decide(3, 2, 1, 2);
        assert_eq!(d.rule, DecideRule::SingleColorLists);
        assert_witness(&d);
        assert_eq!(decide(3, 1, 1, 2).verdict, Verdict::Choosable);
    }

    #[test]
    fn star_is_unchoosable() {
        // K_{1,k}: one A-vertex, k B-vertices.
        for k in 2..=4 {
            let d = decide(k, 1, k, 1);
            assert_witness(&d);
        }
    }

    #[test]
    fn budget_exhaustion() {
        let d = decide_choosable(RegimePoint::new(2, 3, 2, 2).unwrap(), Budget(5)).unwrap();
        assert_eq!(d.verdict, Verdict::Exhausted);
    }

    #[test]
    fn serialized_shape() {
        let json = serde_json::to_value(decide(2, 3, 2, 2)).unwrap();
        assert_eq!(json["tag"], "Choosable");
        assert!(json.get("witness").is_none());
        assert!(json["nodesExplored"].as_u64().unwrap() > 0);
        let json = serde_json::to_value(decide(2, 4, 2, 2)).unwrap();
        assert_eq!(json["witness"]["kB"], 2);
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_of_size(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert_eq!(subsets_of_size(0b11, 3), Vec::<Mask>::new());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).unwrap().len(), 24);
        assert!(permutations(9).is_none());
    }
}
