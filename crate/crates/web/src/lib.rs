//! Browser bindings for the demo page in `www/`. Each export takes plain
//! text and returns a JSON string, with failures reported as `{"error": ...}`.

use incidence_core::acyclicity::{gyo_reduce, GyoRule};
use incidence_core::bounds::eval_w;
use incidence_core::coloring::{
    exact_chromatic, greedy_color, ExactOptions, ExactOutcome, GreedyOrder, IncidenceColoring,
};
use incidence_core::tree_color::color_acyclic_linear;
use incidence_core::Hypergraph;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps the page responsive: the exact solver gets a small budget.
const DEMO_BUDGET: u64 = 200_000;

#[derive(Serialize)]
struct Failure {
    error: String,
}

#[derive(Serialize)]
struct ColoredIncidence {
    vertex: usize,
    edge: usize,
    color: usize,
}

#[derive(Serialize)]
pub struct ColorView {
    vertices: Vec<String>,
    edges: Vec<Vec<usize>>,
    incidences: Vec<ColoredIncidence>,
    palette: usize,
    rank: usize,
    max_degree: usize,
    /// Set when the exact solver proved optimality.
    optimal: bool,
    note: String,
}

#[derive(Serialize)]
struct Step {
    rule: String,
    item: String,
}

#[derive(Serialize)]
pub struct GyoView {
    steps: Vec<Step>,
    acyclic: bool,
    residual: String,
}

fn to_json<T: Serialize>(result: Result<T, String>) -> String {
    let text = match result {
        Ok(v) => serde_json::to_string(&v),
        Err(error) => serde_json::to_string(&Failure { error }),
    };
    text.unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}"))
}

/// Colors the incidences of `text` with `greedy`, `exact` or `tree`.
pub fn color_view(text: &str, method: &str) -> Result<ColorView, String> {
    let h = Hypergraph::parse(text).map_err(|e| e.to_string())?;
    let (coloring, optimal, note): (IncidenceColoring, bool, String) = match method {
        "greedy" => {
            let c = greedy_color(&h, &GreedyOrder::Canonical).map_err(|e| e.to_string())?;
            (
                c,
                false,
                format!("greedy bound 2rΔ = {}", 2 * h.rank() * h.max_degree()),
            )
        }
        "exact" => {
            let options = ExactOptions {
                budget: DEMO_BUDGET,
                ..ExactOptions::default()
            };
            match exact_chromatic(&h, options).map_err(|e| e.to_string())? {
                ExactOutcome::Exact { chi, witness, .. } => (witness, true, format!("optimal: χ = {chi}")),
                ExactOutcome::Unknown { lower, upper, best, .. } => {
                    (best, false, format!("budget exhausted: {lower} ≤ χ ≤ {upper}"))
                }
            }
        }
        "tree" => {
            let t = color_acyclic_linear(&h).map_err(|e| e.to_string())?;
            (t.coloring, false, format!("bound Δ+r−1 = {}", t.bound))
        }
        other => return Err(format!("unknown method `{other}`")),
    };
    let incidences = h
        .incidences()
        .into_iter()
        .zip(coloring.colors())
        .map(|(i, &color)| ColoredIncidence {
            vertex: i.vertex,
            edge: i.edge,
            color,
        })
        .collect();
    Ok(ColorView {
        vertices: h.names().to_vec(),
        edges: h.edges().to_vec(),
        incidences,
        palette: coloring.colors_used(),
        rank: h.rank(),
        max_degree: h.max_degree(),
        optimal,
        note,
    })
}

pub fn gyo_view(text: &str) -> Result<GyoView, String> {
    let h = Hypergraph::parse(text).map_err(|e| e.to_string())?;
    let trace = gyo_reduce(&h);
    let steps = trace
        .steps
        .iter()
        .map(|s| Step {
            rule: s.rule.to_string(),
            item: match s.rule {
                GyoRule::EarVertex => h.name(s.item).to_string(),
                _ => format!("edge {}", s.item),
            },
        })
        .collect();
    Ok(GyoView {
        acyclic: trace.is_empty_residual(),
        residual: trace.residual.to_hg_string(),
        steps,
    })
}

/// Points `(k, W(k, t))` for `k` from `t + 1` up to `k_max`.
pub fn w_points(k_max: u64, t: u64) -> Result<Vec<(u64, f64)>, String> {
    if t == 0 || k_max <= t {
        return Err("need 1 ≤ t < k_max".into());
    }
    (t + 1..=k_max.min(10_000))
        .map(|k| eval_w(k, t).map(|w| (k, w)).map_err(|e| e.to_string()))
        .collect()
}

#[wasm_bindgen]
pub fn color(text: &str, method: &str) -> String {
    to_json(color_view(text, method))
}

#[wasm_bindgen]
pub fn gyo(text: &str) -> String {
    to_json(gyo_view(text))
}

#[wasm_bindgen]
pub fn w_curve(k_max: u32, t: u32) -> String {
    to_json(w_points(k_max.into(), t.into()))
}
