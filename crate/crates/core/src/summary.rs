//! JSON reports shared by the command-line tool and the browser demo.

use serde_json::{json, Value};

use crate::drg::{check_distance_regular, distance_data, Graph};
use crate::error::{Error, Result};
use crate::nucleus::{decompose_nucleus, nucleus, verify_nucleus_theorems};
use crate::projgeom::{build_poset, pmain_operator, sim_classes};
use crate::ratlinalg::rat_to_string;
use crate::report::Report;
use crate::spectral::{BaseContext, SpectralData};
use crate::tmodule::verify_td_system;

/// Intersection array, spectrum, Krein zero pattern, Q-polynomial orderings
/// and, when Q-polynomial, the dual eigenvalues at `base`.
pub fn analyze(graph: Graph, base: usize) -> Result<Value> {
    let label = graph.family().label();
    let dd = distance_data(&graph)?;
    let pn = check_distance_regular(&dd).map_err(|w| Error::NotDistanceRegular(w.to_string()))?;
    let sd = SpectralData::new(&graph, &dd, &pn)?;
    let (b, c) = pn.intersection_array();
    let d = dd.diameter();
    let zeros: Vec<[usize; 3]> = sd
        .krein_zero_pattern()
        .iter()
        .enumerate()
        .flat_map(|(h, m)| {
            m.iter().enumerate().flat_map(move |(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, z)| **z)
                    .map(move |(j, _)| [h, i, j])
            })
        })
        .collect();
    let spectrum: Vec<Value> = (0..=d)
        .map(|i| json!({"theta": sd.theta(i), "mult": sd.mult(i)}))
        .collect();
    let mut out = json!({
        "graph": label,
        "order": dd.order(),
        "diameter": d,
        "intersection_array": {"b": b, "c": c},
        "spectrum": spectrum,
        "krein_zeros": zeros,
        "q_polynomial": sd.is_q_polynomial(),
        "orderings": sd.orderings(),
    });
    if sd.is_q_polynomial() {
        let ctx = BaseContext::new(graph, dd, pn, sd, base)?;
        out["base_vertex"] = json!(base);
        out["theta_star"] = json!(ctx
            .theta_stars()
            .iter()
            .map(rat_to_string)
            .collect::<Vec<_>>());
    }
    Ok(out)
}

/// The nucleus, its decomposition and every certification on it. The flag
/// is false when any check failed.
pub fn nucleus_report(graph: Graph, base: usize) -> Result<(Value, bool)> {
    let ctx = BaseContext::from_graph(graph, base)?;
    let mut nd = nucleus(&ctx)?;
    decompose_nucleus(&ctx, &mut nd)?;
    let theorems = verify_nucleus_theorems(&ctx, &nd);
    let mut td = Report::new();
    for (k, m) in nd.modules.iter().enumerate() {
        let r = verify_td_system(&ctx, m)?;
        td.absorb(format!("module {k} TD system"), &r.checks);
    }
    let mut out = json!({
        "graph": ctx.graph().family().label(),
        "base_vertex": base,
        "nucleus": nd.to_json(),
        "theorems": theorems,
        "td_systems": td,
    });
    let mut ok = nd.checks.passed() && theorems.passed() && td.passed();
    if ctx.graph().is_nonbipartite_dual_polar() {
        let classes = sim_classes(&ctx)?;
        ok &= classes.checks.passed();
        out["classes"] = classes.to_json();
        out["class_checks"] = json!(classes.checks);
    }
    out["passed"] = json!(ok);
    Ok((out, ok))
}

/// The poset of subspaces of the base vertex and, for nonbipartite graphs,
/// the operator describing `A` on the nucleus.
pub fn poset_report(graph: Graph, base: usize) -> Result<(Value, bool)> {
    let ctx = BaseContext::from_graph(graph, base)?;
    let poset = build_poset(&ctx)?;
    let mut ok = poset.checks.passed();
    let mut out = json!({
        "graph": ctx.graph().family().label(),
        "base_vertex": base,
        "poset": poset.to_json(),
        "checks": poset.checks,
    });
    if ctx.graph().is_nonbipartite_dual_polar() {
        let pm = pmain_operator(&ctx, &poset)?;
        ok &= pm.checks.passed();
        out["M"] = pm.to_json();
        out["pmain_checks"] = json!(pm.checks);
    }
    out["passed"] = json!(ok);
    Ok((out, ok))
}
