//! Browser bindings. Each export takes plain numbers or JSON text and
//! returns JSON text; the `*_json` functions hold the logic so they can be
//! tested natively.

use choosekit::bounds::{alpha, classify, xim_bounds};
use choosekit::checker::Budget;
use choosekit::indepset::{
    counterexample_graph, degree_functional_check, fancy_bound, fancy_bound_exact, p_blocked_exact, product_bound,
    STGraph,
};
use choosekit::model::RegimePoint;
use choosekit::sweep::frontier;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Node budget per grid cell; keeps the page responsive.
const CELL_BUDGET: Budget = Budget(2_000_000);
const MAX_GRID: u64 = 12;
const MAX_CURVE_K: u32 = 200;

pub fn frontier_json(ka: u64, kb: u64, max_a: u64, max_b: u64) -> Result<String, String> {
    if ka == 0 || kb == 0 || max_a == 0 || max_b == 0 {
        return Err("all parameters must be positive".into());
    }
    if max_a > MAX_GRID || max_b > MAX_GRID {
        return Err(format!("grid is limited to {MAX_GRID}x{MAX_GRID}"));
    }
    let rows = frontier(ka, kb, max_a, max_b, CELL_BUDGET).map_err(|e| e.to_string())?;
    let cells: Vec<Value> = rows
        .iter()
        .map(|r| {
            let c = classify(RegimePoint { delta_a: r.delta_a, delta_b: r.delta_b, ka, kb });
            json!({
                "deltaA": r.delta_a,
                "deltaB": r.delta_b,
                "xi": r.xi,
                "verdict": r.verdict,
                "rule": r.rule,
                "nodesExplored": r.nodes_explored,
                "classified": format!("{:?}", c.verdict),
                "classRule": c.rule.name(),
            })
        })
        .collect();
    Ok(json!({ "kA": ka, "kB": kb, "cells": cells }).to_string())
}

pub fn alpha_curve_json(k_max: u32) -> Result<String, String> {
    if !(2..=MAX_CURVE_K).contains(&k_max) {
        return Err(format!("k must lie in 2..={MAX_CURVE_K}"));
    }
    let points: Vec<Value> = (2..=k_max)
        .map(|k| {
            let a = alpha(k);
            let b = xim_bounds(k);
            json!({
                "k": k,
                "alpha": a.alpha,
                "uStar": a.u_star,
                "lo": b.lo,
                "hi": b.hi,
                "loSource": b.lo_source,
                "hiSource": b.hi_source,
            })
        })
        .collect();
    Ok(Value::Array(points).to_string())
}

pub fn classify_json(delta_a: u64, delta_b: u64, ka: u64, kb: u64) -> Result<String, String> {
    let p = RegimePoint::new(delta_a, delta_b, ka, kb).map_err(|e| e.to_string())?;
    let r = classify(p);
    Ok(json!({ "xi": r.xi, "verdict": format!("{:?}", r.verdict), "rule": r.rule.name() }).to_string())
}

/// Exact blocking probability and its bounds; empty input means the
/// built-in counterexample.
pub fn p_blocked_json(graph: &str) -> Result<String, String> {
    let g = if graph.trim().is_empty() {
        counterexample_graph()
    } else {
        STGraph::from_json(graph).map_err(|e| e.to_string())?
    };
    let exact = p_blocked_exact(&g).map_err(|e| e.to_string())?;
    let value = exact.to_f64().unwrap_or(f64::NAN);
    let mut out = json!({
        "graph": g,
        "exact": exact.to_string(),
        "value": value,
        "product": product_bound(&g),
    });
    if let Ok(b) = fancy_bound(&g) {
        out["bound"] = json!(b);
        if let Ok(Some(q)) = fancy_bound_exact(&g) {
            out["boundExact"] = json!(q.to_string());
        }
    }
    if let Ok(f) = degree_functional_check(&g) {
        out["functional"] = json!(f.value.to_string());
    }
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn frontier_grid(ka: u32, kb: u32, max_a: u32, max_b: u32) -> Result<String, JsValue> {
    frontier_json(ka.into(), kb.into(), max_a.into(), max_b.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn alpha_curve(k_max: u32) -> Result<String, JsValue> {
    alpha_curve_json(k_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify_point(delta_a: u32, delta_b: u32, ka: u32, kb: u32) -> Result<String, JsValue> {
    classify_json(delta_a.into(), delta_b.into(), ka.into(), kb.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn p_blocked(graph: &str) -> Result<String, JsValue> {
    p_blocked_json(graph).map_err(|e| JsValue::from_str(&e))
}
