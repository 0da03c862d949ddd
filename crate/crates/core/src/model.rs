//! Colors, list assignments, parameter points and their JSON forms.
//!
//! Colors are dense integer ids `0..universe`. A [`ListInstance`] stores the
//! lists of both parts of a bipartite graph; the usual case is the complete
//! bipartite graph `K_{|A|,|B|}` where every A-vertex sees every B-vertex, so
//! `|A| = Δ_B` and `|B| = Δ_A`.
//!
//! A proper coloring picks `c(v) ∈ L(v)` for every vertex with distinct colors
//! on adjacent vertices (list *membership*; some texts write `c(v) = L(v)`,
//! which cannot be meant literally).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Color = u32;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("operation requires a complete bipartite instance")]
    NotCompleteBipartite,
    #[error("malformed parameter point {0:?}: expected four positive integers deltaA,deltaB,kA,kB")]
    BadPoint(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

/// Coordinates `(Δ_A, Δ_B, k_A, k_B)` of the complete bipartite graph
/// `K_{Δ_B, Δ_A}` with A-lists of size `k_A` and B-lists of size `k_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegimePoint {
    #[serde(rename = "deltaA")]
    pub delta_a: u64,
    #[serde(rename = "deltaB")]
    pub delta_b: u64,
    #[serde(rename = "kA")]
    pub ka: u64,
    #[serde(rename = "kB")]
    pub kb: u64,
}

impl RegimePoint {
    pub fn new(delta_a: u64, delta_b: u64, ka: u64, kb: u64) -> Result<Self, ModelError> {
        if delta_a == 0 || delta_b == 0 || ka == 0 || kb == 0 {
            return Err(ModelError::BadPoint(format!(
                "{delta_a},{delta_b},{ka},{kb}"
            )));
        }
        Ok(RegimePoint { delta_a, delta_b, ka, kb })
    }
}

impl fmt::Display for RegimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.delta_a, self.delta_b, self.ka, self.kb)
    }
}

impl FromStr for RegimePoint {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ModelError::BadPoint(s.to_string()))?;
        match parts[..] {
            [da, db, ka, kb] => RegimePoint::new(da, db, ka, kb),
            _ => Err(ModelError::BadPoint(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Adjacency {
    /// Every A-vertex is adjacent to every B-vertex.
    Complete,
    /// Explicit `(a-index, b-index)` pairs.
    Edges(Vec<(usize, usize)>),
}

/// A bipartite graph together with a list assignment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ListInstance {
    pub universe: usize,
    #[serde(rename = "kA")]
    pub ka: usize,
    #[serde(rename = "kB")]
    pub kb: usize,
    pub adjacency: Adjacency,
    #[serde(rename = "aLists")]
    pub a_lists: Vec<Vec<Color>>,
    #[serde(rename = "bLists")]
    pub b_lists: Vec<Vec<Color>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    RepeatedColor { side: Side, vertex: usize },
    ColorOutOfUniverse { side: Side, vertex: usize, color: Color },
    WrongListSize { side: Side, vertex: usize, expected: usize, found: usize },
    EdgeOutOfRange { a: usize, b: usize },
    DuplicateEdge { a: usize, b: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RepeatedColor { side, vertex } => {
                write!(f, "list has repeated color ({side}{vertex})")
            }
            Violation::ColorOutOfUniverse { side, vertex, color } => {
                write!(f, "color out of universe ({side}{vertex}: {color})")
            }
            Violation::WrongListSize { side, vertex, expected, found } => write!(
                f,
                "list has wrong size ({side}{vertex}: expected {expected}, found {found})"
            ),
            Violation::EdgeOutOfRange { a, b } => write!(f, "edge out of range ({a},{b})"),
            Violation::DuplicateEdge { a, b } => write!(f, "duplicate edge ({a},{b})"),
        }
    }
}

fn sorted(mut list: Vec<Color>) -> Vec<Color> {
    list.sort_unstable();
    list
}

impl ListInstance {
    /// Complete bipartite instance; each list is sorted.
    pub fn complete(
        universe: usize,
        ka: usize,
        kb: usize,
        a_lists: Vec<Vec<Color>>,
        b_lists: Vec<Vec<Color>>,
    ) -> Self {
        ListInstance {
            universe,
            ka,
            kb,
            adjacency: Adjacency::Complete,
            a_lists: a_lists.into_iter().map(sorted).collect(),
            b_lists: b_lists.into_iter().map(sorted).collect(),
        }
    }

    pub fn with_edges(
        universe: usize,
        ka: usize,
        kb: usize,
        a_lists: Vec<Vec<Color>>,
        b_lists: Vec<Vec<Color>>,
        mut edges: Vec<(usize, usize)>,
    ) -> Self {
        edges.sort_unstable();
        ListInstance {
            universe,
            ka,
            kb,
            adjacency: Adjacency::Edges(edges),
            a_lists: a_lists.into_iter().map(sorted).collect(),
            b_lists: b_lists.into_iter().map(sorted).collect(),
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.adjacency, Adjacency::Complete)
    }

    pub fn a_count(&self) -> usize {
        self.a_lists.len()
    }

    pub fn b_count(&self) -> usize {
        self.b_lists.len()
    }

    /// The parameter point of a complete bipartite instance.
    pub fn regime_point(&self) -> Option<RegimePoint> {
        if !self.is_complete() {
            return None;
        }
        RegimePoint::new(
            self.b_count() as u64,
            self.a_count() as u64,
            self.ka as u64,
            self.kb as u64,
        )
        .ok()
    }

    /// All `(a, b)` adjacent pairs, materialized.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match &self.adjacency {
            Adjacency::Complete => (0..self.a_count())
                .flat_map(|a| (0..self.b_count()).map(move |b| (a, b)))
                .collect(),
            Adjacency::Edges(e) => e.clone(),
        }
    }

    /// Neighbor lists of A-vertices (into B) and of B-vertices (into A).
    pub fn neighborhoods(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut na = vec![Vec::new(); self.a_count()];
        let mut nb = vec![Vec::new(); self.b_count()];
        for (a, b) in self.edges() {
            if a < na.len() && b < nb.len() {
                na[a].push(b);
                nb[b].push(a);
            }
        }
        (na, nb)
    }

    /// Every violated well-formedness condition; empty iff well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (side, lists, k) in [
            (Side::A, &self.a_lists, self.ka),
            (Side::B, &self.b_lists, self.kb),
        ] {
            for (vertex, list) in lists.iter().enumerate() {
                let distinct: BTreeSet<Color> = list.iter().copied().collect();
                if distinct.len() != list.len() {
                    out.push(Violation::RepeatedColor { side, vertex });
                }
                for &color in list {
                    if color as usize >= self.universe {
                        out.push(Violation::ColorOutOfUniverse { side, vertex, color });
                    }
                }
                if list.len() != k {
                    out.push(Violation::WrongListSize {
                        side,
                        vertex,
                        expected: k,
                        found: list.len(),
                    });
                }
            }
        }
        if let Adjacency::Edges(edges) = &self.adjacency {
            let mut seen = BTreeSet::new();
            for &(a, b) in edges {
                if a >= self.a_count() || b >= self.b_count() {
                    out.push(Violation::EdgeOutOfRange { a, b });
                }
                if !seen.insert((a, b)) {
                    out.push(Violation::DuplicateEdge { a, b });
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), ModelError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
            Err(ModelError::Invalid(msgs.join("; ")))
        }
    }

    /// Maximal form of a complete instance: lists sorted, duplicates within
    /// each part dropped, parts sorted lexicographically.
    pub fn canonicalized(&self) -> Result<ListInstance, ModelError> {
        if !self.is_complete() {
            return Err(ModelError::NotCompleteBipartite);
        }
        let dedup = |lists: &[Vec<Color>]| -> Vec<Vec<Color>> {
            lists
                .iter()
                .cloned()
                .map(sorted)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        Ok(ListInstance {
            universe: self.universe,
            ka: self.ka,
            kb: self.kb,
            adjacency: Adjacency::Complete,
            a_lists: dedup(&self.a_lists),
            b_lists: dedup(&self.b_lists),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// Parses an instance file; lists are sorted on the way in.
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let mut inst: ListInstance = serde_json::from_str(text)?;
        for l in inst.a_lists.iter_mut().chain(inst.b_lists.iter_mut()) {
            l.sort_unstable();
        }
        if let Adjacency::Edges(e) = &mut inst.adjacency {
            e.sort_unstable();
        }
        Ok(inst)
    }
}

/// A total assignment of colors to both parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub a: Vec<Color>,
    pub b: Vec<Color>,
}

impl Coloring {
    pub fn color_of(&self, side: Side, vertex: usize) -> Color {
        match side {
            Side::A => self.a[vertex],
            Side::B => self.b[vertex],
        }
    }

    /// True iff every vertex takes a color from its list and no edge is
    /// monochromatic.
    pub fn is_proper_for(&self, instance: &ListInstance) -> bool {
        if self.a.len() != instance.a_count() || self.b.len() != instance.b_count() {
            return false;
        }
        let in_lists = self
            .a
            .iter()
            .zip(&instance.a_lists)
            .chain(self.b.iter().zip(&instance.b_lists))
            .all(|(c, l)| l.contains(c));
        in_lists
            && instance
                .edges()
                .into_iter()
                .all(|(a, b)| self.a[a] != self.b[b])
    }
}

/// The color hypergraph `H` (A-lists as hyperedges) together with the family
/// `F` of B-lists. Sets are sorted, and both collections are sorted and free
/// of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorSystem {
    pub vertices: usize,
    pub edges: Vec<Vec<Color>>,
    pub family: Vec<Vec<Color>>,
}

impl ColorSystem {
    pub fn new(vertices: usize, edges: Vec<Vec<Color>>, family: Vec<Vec<Color>>) -> Self {
        let norm = |sets: Vec<Vec<Color>>| -> Vec<Vec<Color>> {
            sets.into_iter()
                .map(sorted)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        ColorSystem {
            vertices,
            edges: norm(edges),
            family: norm(family),
        }
    }

    /// `L ↦ (H(L), F(L))` for a complete bipartite instance. Repeated lists
    /// are merged first; they never affect choosability.
    pub fn from_instance(instance: &ListInstance) -> Result<Self, ModelError> {
        let canon = instance.canonicalized()?;
        Ok(ColorSystem {
            vertices: canon.universe,
            edges: canon.a_lists,
            family: canon.b_lists,
        })
    }

    /// A complete bipartite instance mapping onto this system.
    pub fn preimage(&self, ka: usize, kb: usize) -> ListInstance {
        ListInstance::complete(self.vertices, ka, kb, self.edges.clone(), self.family.clone())
    }

    pub fn edge_size(&self) -> Option<usize> {
        self.edges.first().map(Vec::len)
    }

    pub fn family_size(&self) -> Option<usize> {
        self.family.first().map(Vec::len)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("color system serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let raw: ColorSystem = serde_json::from_str(text)?;
        Ok(ColorSystem::new(raw.vertices, raw.edges, raw.family))
    }
}

/// Binomial coefficient in `u128`, saturating.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
