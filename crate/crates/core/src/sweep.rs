//! Grid sweeps of the exact decision procedure.

use serde::Serialize;

use crate::bounds::xi;
use crate::checker::{decide_choosable, Budget, CheckError};
use crate::model::RegimePoint;

/// One grid cell, in CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrontierRow {
    #[serde(rename = "deltaA")]
    pub delta_a: u64,
    #[serde(rename = "deltaB")]
    pub delta_b: u64,
    #[serde(rename = "kA")]
    pub ka: u64,
    #[serde(rename = "kB")]
    pub kb: u64,
    pub xi: f64,
    pub verdict: String,
    pub rule: String,
    #[serde(rename = "nodesExplored")]
    pub nodes_explored: u64,
}

pub const FRONTIER_HEADER: [&str; 8] = ["deltaA", "deltaB", "kA", "kB", "xi", "verdict", "rule", "nodesExplored"];

/// Points with `1 ≤ Δ_A ≤ max_a`, `1 ≤ Δ_B ≤ max_b`, sorted by `(Δ_A, Δ_B)`.
pub fn frontier_points(ka: u64, kb: u64, max_a: u64, max_b: u64) -> Vec<RegimePoint> {
    let mut out = Vec::new();
    for da in 1..=max_a {
        for db in 1..=max_b {
            out.push(RegimePoint { delta_a: da, delta_b: db, ka, kb });
        }
    }
    out
}

pub fn frontier_cell(point: RegimePoint, budget: Budget) -> Result<FrontierRow, CheckError> {
    let d = decide_choosable(point, budget)?;
    Ok(FrontierRow {
        delta_a: point.delta_a,
        delta_b: point.delta_b,
        ka: point.ka,
        kb: point.kb,
        xi: xi(point),
        verdict: d.verdict.tag().to_string(),
        rule: d.rule.name().to_string(),
        nodes_explored: d.nodes_explored,
    })
}

/// Sequential sweep; rows come out in [`frontier_points`] order.
pub fn frontier(ka: u64, kb: u64, max_a: u64, max_b: u64, budget: Budget) -> Result<Vec<FrontierRow>, CheckError> {
    frontier_points(ka, kb, max_a, max_b)
        .into_iter()
        .map(|p| frontier_cell(p, budget))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_rows() {
        let rows = frontier(2, 2, 3, 5, Budget::DEFAULT).unwrap();
        assert_eq!(rows.len(), 15);
        let get = |a, b| rows.iter().find(|r| r.delta_a == a && r.delta_b == b).unwrap();
        assert_eq!(get(2, 3).verdict, "Choosable");
        assert_eq!(get(2, 4).verdict, "Unchoosable");
        assert_eq!(get(1, 5).rule, "trivial-region");
    }
}
