//! The full verification suite for one graph and base vertex, grouped so a
//! caller can run a subset.

use serde_json::{json, Value};

use crate::drg::{check_distance_regular, distance_data, verify_dual_polar_parameters, Graph};
use crate::error::{Error, Result};
use crate::nucleus::{decompose_nucleus, nucleus, verify_nucleus_theorems};
use crate::projgeom::{
    build_poset, eta_vee, pmain_operator, sim_classes, verify_bij, verify_ns2, wgc_closure,
};
use crate::report::Report;
use crate::spectral::{verify_algebra_relations, verify_bose_mesner, BaseContext, SpectralData};
use crate::tmodule::{module_isomorphism, verify_td_system};

/// Check groups in run order.
pub const GROUPS: [&str; 6] = [
    "drg", "spectral", "nucleus", "tdsystem", "projgeom", "pmain",
];

/// Above this order the naive closure sweeps are skipped.
pub const CLOSURE_LIMIT: usize = 300;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub label: String,
    pub groups: Vec<(String, Report)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.groups.iter().all(|(_, r)| r.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "graph": self.label,
            "passed": self.passed(),
            "groups": self.groups.iter().map(|(g, r)| json!({"group": g, "passed": r.passed(), "checks": r.checks})).collect::<Vec<_>>(),
        })
    }
}

/// Parses a comma-separated group selection; an empty selection means all.
pub fn parse_groups(only: Option<&str>) -> Result<Vec<&'static str>> {
    let Some(spec) = only else {
        return Ok(GROUPS.to_vec());
    };
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let g = GROUPS
            .iter()
            .find(|g| g.eq_ignore_ascii_case(part))
            .ok_or_else(|| {
                Error::Input(format!(
                    "unknown check group '{part}'; expected one of {}",
                    GROUPS.join(", ")
                ))
            })?;
        if !out.contains(g) {
            out.push(*g);
        }
    }
    if out.is_empty() {
        return Ok(GROUPS.to_vec());
    }
    out.sort_by_key(|g| GROUPS.iter().position(|x| x == g));
    Ok(out)
}

fn certification(rep: &mut Report, name: &str, r: Result<Report>) {
    match r {
        Ok(sub) => rep.extend(sub),
        Err(e) => {
            rep.record(name, false, e.to_string());
        }
    }
}

/// Runs the selected groups. Fails outright only when the graph is not a
/// Q-polynomial distance-regular graph; every other problem is a failed
/// check in the returned report.
pub fn run_suite(graph: Graph, base: usize, groups: &[&str]) -> Result<SuiteReport> {
    let label = graph.family().label();
    let want = |g: &str| groups.contains(&g);
    let mut out = Vec::new();

    let dd = distance_data(&graph)?;
    let pn = check_distance_regular(&dd).map_err(|w| Error::NotDistanceRegular(w.to_string()))?;
    if want("drg") {
        let mut rep = Report::new();
        let (b, c) = pn.intersection_array();
        rep.record("distance-regular", true, format!("{{{b:?}; {c:?}}}"));
        if graph.dual_polar().is_some() {
            certification(
                &mut rep,
                "inter",
                verify_dual_polar_parameters(&graph, &dd, &pn),
            );
        }
        out.push(("drg".to_string(), rep));
    }
    let sd = SpectralData::new(&graph, &dd, &pn)?;
    let bm = want("spectral").then(|| verify_bose_mesner(&sd, &dd, &pn));
    let ctx = BaseContext::new(graph, dd, pn, sd, base)?;
    if let Some(mut rep) = bm {
        rep.extend(verify_algebra_relations(&ctx));
        out.push(("spectral".to_string(), rep));
    }
    let n = ctx.order();
    let dual_polar = ctx.graph().dual_polar().is_some();
    let nonbipartite = ctx.graph().is_nonbipartite_dual_polar();

    let nd = if want("nucleus") || want("tdsystem") || (want("projgeom") && dual_polar) {
        let mut nd = nucleus(&ctx)?;
        let decomposed = decompose_nucleus(&ctx, &mut nd);
        if let Err(e) = &decomposed {
            nd.checks.record("decompose", false, e.to_string());
        }
        Some((nd, decomposed.is_ok()))
    } else {
        None
    };
    if want("nucleus") {
        let (nd, ok) = nd.as_ref().expect("computed above");
        let mut rep = nd.checks.clone();
        if *ok {
            rep.extend(verify_nucleus_theorems(&ctx, nd));
        }
        out.push(("nucleus".to_string(), rep));
    }
    if want("tdsystem") {
        let (nd, _) = nd.as_ref().expect("computed above");
        let mut rep = Report::new();
        for (k, m) in nd.modules.iter().enumerate() {
            let name = format!("module {k} (r={}, dim {})", m.endpoint, m.dim());
            rep.absorb(format!("{name} invariants"), &m.invariants());
            match verify_td_system(&ctx, m) {
                Ok(td) => {
                    rep.absorb(format!("{name} TD system"), &td.checks);
                }
                Err(e) => {
                    rep.record(format!("{name} TD system"), false, e.to_string());
                }
            }
        }
        for (k, m) in nd.modules.iter().enumerate() {
            if let Some(first) = nd.modules[..k].iter().find(|w| w.endpoint == m.endpoint) {
                let iso = module_isomorphism(&ctx, first, m);
                rep.record(
                    format!("module {k} isomorphic to its endpoint's first module"),
                    iso.is_ok(),
                    iso.err().map(|e| e.to_string()).unwrap_or_default(),
                );
            }
        }
        out.push(("tdsystem".to_string(), rep));
    }
    if want("projgeom") {
        let mut rep = Report::new();
        if !dual_polar {
            rep.skip("projgeom", "not a dual polar graph");
        } else {
            match build_poset(&ctx) {
                Ok(poset) => {
                    rep.extend(poset.checks.clone());
                    let d = ctx.diameter();
                    let mut bad = Vec::new();
                    for eta in &poset.elements {
                        match eta_vee(&ctx, eta) {
                            Ok(w) if w.checks.passed() => {}
                            Ok(w) => bad.push(format!(
                                "dim {}: {:?}",
                                eta.dim(),
                                w.checks
                                    .failures()
                                    .map(|c| c.name.clone())
                                    .collect::<Vec<_>>()
                            )),
                            Err(e) => bad.push(format!("dim {}: {e}", eta.dim())),
                        }
                    }
                    rep.record("etaV WGC for every η", bad.is_empty(), bad.join("; "));
                    if n <= CLOSURE_LIMIT {
                        let mut bad = Vec::new();
                        for i in 0..=d {
                            let y = ctx.shell(i)[0];
                            match wgc_closure(&ctx, base, y) {
                                Ok(w) if w.checks.passed() => {}
                                Ok(w) => bad.push(format!(
                                    "i={i}: {:?}",
                                    w.checks
                                        .failures()
                                        .map(|c| c.name.clone())
                                        .collect::<Vec<_>>()
                                )),
                                Err(e) => bad.push(format!("i={i}: {e}")),
                            }
                        }
                        rep.record("WGCfind/WGCsame closures", bad.is_empty(), bad.join("; "));
                    } else {
                        rep.skip(
                            "WGCfind/WGCsame closures",
                            format!("more than {CLOSURE_LIMIT} vertices"),
                        );
                    }
                    if nonbipartite {
                        certification(&mut rep, "sim", sim_classes(&ctx).map(|c| c.checks));
                        for i in 0..=d {
                            certification(&mut rep, &format!("NS2 i={i}"), verify_ns2(&ctx, i));
                        }
                        let (nd, _) = nd.as_ref().expect("computed above");
                        rep.extend(verify_bij(&ctx, &poset, nd));
                    } else {
                        for name in ["sim", "NS2", "bij"] {
                            rep.skip(name, "only for nonbipartite dual polar graphs");
                        }
                    }
                }
                Err(e) => {
                    rep.record("poset", false, e.to_string());
                }
            }
        }
        out.push(("projgeom".to_string(), rep));
    }
    if want("pmain") {
        let mut rep = Report::new();
        if !nonbipartite {
            rep.skip("Pmain", "only for nonbipartite dual polar graphs");
        } else {
            certification(
                &mut rep,
                "Pmain",
                build_poset(&ctx)
                    .and_then(|p| pmain_operator(&ctx, &p))
                    .map(|pm| pm.checks),
            );
        }
        out.push(("pmain".to_string(), rep));
    }
    Ok(SuiteReport { label, groups: out })
}
