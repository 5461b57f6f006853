//! Browser bindings for the demo page in `www/`.
//!
//! Three operations are exported: generate an instance, run Min-Greedy with
//! its full elimination trace and the degree bounds, and solve small
//! instances exactly. Each returns JSON; vertex ids are 1-based as in the
//! text format. The plain functions are what the tests call; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use mingreedy::gen::GenSpec;
use mingreedy::{caro_wei_bound, exact_fvs, min_greedy, parse_digraph, turan_bound, verify_acyclic_selection};
use mingreedy::{Digraph, TieRule, Vertex};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest instance the page will draw and solve.
pub const MAX_ORDER: usize = 200;
/// The exact oracle is exponential; keep the page responsive.
pub const EXACT_LIMIT: usize = 20;

#[derive(Serialize)]
struct Step {
    vertex: u64,
    removed: Vec<u64>,
}

#[derive(Serialize)]
struct GreedyView {
    n: usize,
    arcs: Vec<(u64, u64)>,
    tie: String,
    steps: Vec<Step>,
    selected: Vec<u64>,
    acyclic: bool,
    caro_wei: String,
    caro_wei_decimal: String,
    caro_wei_ceiling: u64,
    turan_acyclic_lower: Option<String>,
}

#[derive(Serialize)]
struct ExactView {
    tau0: usize,
    optimal_fvs: Vec<u64>,
    max_acyclic: Vec<u64>,
}

fn one_based(v: Vertex) -> u64 {
    v as u64 + 1
}

fn load(text: &str) -> Result<Digraph, String> {
    let d = parse_digraph(text).map_err(|e| e.to_string())?;
    if d.order() > MAX_ORDER {
        return Err(format!(
            "the demo handles at most {MAX_ORDER} vertices, got {}",
            d.order()
        ));
    }
    Ok(d)
}

/// Instance text for a generator family. Parameters a family does not use
/// are ignored.
pub fn generate_text(family: &str, n: usize, k: usize, m: usize, p: f64, seed: u64) -> Result<String, String> {
    let spec = match family {
        "clique-union" => GenSpec::CliqueUnion { k, m },
        "random" => GenSpec::Random { n, p, seed },
        "cycle" => GenSpec::Cycle { n },
        "path" => GenSpec::Path { n },
        "tournament" => GenSpec::Tournament { n, seed },
        "edgeless" => GenSpec::Edgeless { n },
        other => return Err(format!("unknown family {other:?}")),
    };
    let d = spec.generate().map_err(|e| e.to_string())?;
    if d.order() > MAX_ORDER {
        return Err(format!("the demo handles at most {MAX_ORDER} vertices"));
    }
    Ok(mingreedy::serialize_digraph(&d))
}

pub fn greedy_json(text: &str, tie: &str, seed: u64) -> Result<String, String> {
    let d = load(text)?;
    let tie = TieRule::parse_with_seed(tie, seed).map_err(|e| e.to_string())?;
    let result = min_greedy(&d, tie);
    let caro_wei = caro_wei_bound(&d);
    let view = GreedyView {
        n: d.order(),
        arcs: d.arcs().map(|(u, v)| (one_based(u), one_based(v))).collect(),
        tie: tie.to_string(),
        steps: result
            .steps()
            .map(|s| Step {
                vertex: one_based(s.vertex),
                removed: s.out_neighbors.iter().map(|&v| one_based(v)).collect(),
            })
            .collect(),
        selected: result.selected().iter().map(|&v| one_based(v)).collect(),
        acyclic: verify_acyclic_selection(&d, &result.selected_set()).map_err(|e| e.to_string())?,
        caro_wei_decimal: caro_wei.to_decimal(4),
        caro_wei_ceiling: caro_wei.ceil_u64(),
        caro_wei: caro_wei.to_string(),
        turan_acyclic_lower: turan_bound(&d).ok().map(|t| t.acyclic_lower.to_string()),
    };
    Ok(serde_json::to_string(&view).expect("view serializes"))
}

pub fn exact_json(text: &str) -> Result<String, String> {
    let d = load(text)?;
    let r = exact_fvs(&d, EXACT_LIMIT).map_err(|e| e.to_string())?;
    let view = ExactView {
        tau0: r.tau0,
        optimal_fvs: r.optimal_fvs.iter().map(one_based).collect(),
        max_acyclic: r.max_acyclic.iter().map(one_based).collect(),
    };
    Ok(serde_json::to_string(&view).expect("view serializes"))
}

#[wasm_bindgen]
pub fn generate(family: &str, n: u32, k: u32, m: u32, p: f64, seed: u32) -> Result<String, JsError> {
    generate_text(family, n as usize, k as usize, m as usize, p, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn run_greedy(text: &str, tie: &str, seed: u32) -> Result<String, JsError> {
    greedy_json(text, tie, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve_exact(text: &str) -> Result<String, JsError> {
    exact_json(text).map_err(|e| JsError::new(&e))
}
