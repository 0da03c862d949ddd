//! Exact and numeric tools for asymmetric list coloring of complete
//! bipartite graphs `K_{Δ_B,Δ_A}`, where every vertex of part `A` (degree
//! `Δ_A`) gets a list of `k_A` colors and every vertex of part `B` (degree
//! `Δ_B`) gets `k_B` colors.

pub mod acceptance;
pub mod amplify;
pub mod bounds;
pub mod checker;
pub mod constructions;
pub mod indepset;
pub mod model;
pub mod oracle;
pub mod sweep;

pub use checker::{decide_choosable, has_proper_coloring, Budget, Decision, Engine, Verdict};
pub use model::{ColorSystem, Coloring, ListInstance, RegimePoint};
