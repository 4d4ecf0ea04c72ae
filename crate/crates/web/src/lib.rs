//! Browser bindings. Each export takes a family description and returns a
//! JSON string; the plain functions underneath are what the tests call.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use nucleus_core::drg::{build_family, DualPolarKind, Family, Graph};
use nucleus_core::summary::{analyze, nucleus_report, poset_report};

/// Largest graph the page will compute on.
pub const MAX_ORDER: usize = 400;

pub fn parse_family(name: &str, d: usize, q: u64, n: usize) -> Result<Family, String> {
    Ok(match name {
        "hypercube" => Family::Hypercube { d },
        "hamming" => Family::Hamming { d, n },
        "odd" => Family::Odd { d },
        other => {
            let kind = DualPolarKind::from_name(other)
                .ok_or_else(|| format!("unknown family '{other}'"))?;
            Family::DualPolar { kind, d, q }
        }
    })
}

fn graph(name: &str, d: usize, q: u64, n: usize) -> Result<Graph, String> {
    let g = build_family(&parse_family(name, d, q, n)?).map_err(|e| e.to_string())?;
    if g.order() > MAX_ORDER {
        return Err(format!(
            "{} has {} vertices; the demo stops at {MAX_ORDER}",
            g.family().label(),
            g.order()
        ));
    }
    Ok(g)
}

/// Intersection array, eigenvalues and dual eigenvalues.
pub fn analyze_json(name: &str, d: usize, q: u64, n: usize) -> Result<Value, String> {
    analyze(graph(name, d, q, n)?, 0).map_err(|e| e.to_string())
}

/// Nucleus dimensions, module multiplicities and certification results.
pub fn nucleus_json(name: &str, d: usize, q: u64, n: usize) -> Result<Value, String> {
    let (v, _) = nucleus_report(graph(name, d, q, n)?, 0).map_err(|e| e.to_string())?;
    let nuc = &v["nucleus"];
    Ok(json!({
        "graph": v["graph"],
        "dim": nuc["dim"],
        "EstarN": nuc["EstarN"],
        "mult": nuc["mult"],
        "modules": nuc["modules"],
        "classes": v.get("classes").cloned().unwrap_or(Value::Null),
        "passed": v["passed"],
    }))
}

/// The poset of subspaces of the base vertex with the operator of `A` on
/// the nucleus, as a dense matrix in poset order.
pub fn pmain_json(name: &str, d: usize, q: u64, n: usize) -> Result<Value, String> {
    let (v, _) = poset_report(graph(name, d, q, n)?, 0).map_err(|e| e.to_string())?;
    let counts = v["poset"]["counts"].clone();
    let size: usize = counts.as_array().map_or(0, |c| {
        c.iter().filter_map(Value::as_u64).sum::<u64>() as usize
    });
    let mut dense = vec![vec!["0".to_string(); size]; size];
    if let Some(entries) = v["M"]["entries"].as_array() {
        for e in entries {
            let (r, c) = (
                e[0].as_u64().unwrap_or(0) as usize,
                e[1].as_u64().unwrap_or(0) as usize,
            );
            dense[r][c] = e[2].as_str().unwrap_or("0").to_string();
        }
    }
    Ok(json!({
        "graph": v["graph"],
        "counts": counts,
        "M": dense,
        "passed": v["passed"],
    }))
}

fn render(r: Result<Value, String>) -> Result<String, String> {
    r.map(|v| serde_json::to_string(&v).expect("JSON values serialize"))
}

#[wasm_bindgen(js_name = analyze)]
pub fn analyze_js(family: &str, d: usize, q: u32, n: usize) -> Result<String, String> {
    render(analyze_json(family, d, q.into(), n))
}

#[wasm_bindgen(js_name = nucleus)]
pub fn nucleus_js(family: &str, d: usize, q: u32, n: usize) -> Result<String, String> {
    render(nucleus_json(family, d, q.into(), n))
}

#[wasm_bindgen(js_name = pmain)]
pub fn pmain_js(family: &str, d: usize, q: u32, n: usize) -> Result<String, String> {
    render(pmain_json(family, d, q.into(), n))
}
