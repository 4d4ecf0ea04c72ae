use serde_json::{json, Value};

use super::{dual_polar, meet_with_base, nonbipartite};
use crate::drg::{check_distance_regular, distance_data, Family, Graph};
use crate::error::{Error, Result};
use crate::gfspace::FFSubspace;
use crate::nucleus::shell_components;
use crate::report::Report;
use crate::spectral::BaseContext;

/// A vertex subset closed under `∂(y,ξ) + ∂(ξ,z) ≤ ∂(y,z) + 1`.
#[derive(Clone, Debug)]
pub struct WGCSubgraph {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    pub diameter: usize,
    /// Measured on the induced subgraph, indexed by distance.
    pub c: Vec<i64>,
    pub a: Vec<i64>,
    pub generator: Option<FFSubspace>,
    pub checks: Report,
}

impl WGCSubgraph {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.vertices.len(),
            "diameter": self.diameter,
            "c": self.c,
            "a": self.a,
        })
    }
}

/// First violation of weak-geodetic closure, as `(y, z, ξ)`.
fn wgc_violation(ctx: &BaseContext, set: &[usize]) -> Option<(usize, usize, usize)> {
    let dd = ctx.distances();
    let mut inside = vec![false; ctx.order()];
    set.iter().for_each(|&v| inside[v] = true);
    let outside: Vec<usize> = (0..ctx.order()).filter(|&v| !inside[v]).collect();
    for (k, &y) in set.iter().enumerate() {
        for &z in &set[k + 1..] {
            let bound = dd.dist(y, z) + 1;
            if let Some(&xi) = outside
                .iter()
                .find(|&&xi| dd.dist(y, xi) + dd.dist(xi, z) <= bound)
            {
                return Some((y, z, xi));
            }
        }
    }
    None
}

/// Profiles an induced subgraph, certifying closure and distance-regularity
/// with `c_j` and `a_j` inherited from the whole graph.
fn profile(
    ctx: &BaseContext,
    vertices: Vec<usize>,
    generator: Option<FFSubspace>,
) -> Result<WGCSubgraph> {
    let mut checks = Report::new();
    let violation = wgc_violation(ctx, &vertices);
    checks.record("WGC", violation.is_none(), format!("{violation:?}"));
    let pos = |v: usize| vertices.binary_search(&v).ok();
    let mut edges = Vec::new();
    for (k, &u) in vertices.iter().enumerate() {
        for &v in ctx.graph().neighbors(u) {
            if let Some(j) = pos(v).filter(|&j| j > k) {
                edges.push((k, j));
            }
        }
    }
    let labels = vertices.iter().map(|&v| json!(v)).collect();
    let sub = Graph::from_edges(
        Family::Custom {
            name: "induced".into(),
        },
        labels,
        &edges,
    )?;
    let sdd = distance_data(&sub)?;
    let dd = ctx.distances();
    let isometric = (0..vertices.len())
        .all(|a| (0..vertices.len()).all(|b| sdd.dist(a, b) == dd.dist(vertices[a], vertices[b])));
    checks.record("isometric", isometric, "");
    let pn = check_distance_regular(&sdd)
        .map_err(|w| Error::Certification(format!("subgraph not distance-regular: {w}")))?;
    let diameter = sdd.diameter();
    let c: Vec<i64> = (0..=diameter).map(|j| pn.c(j)).collect();
    let a: Vec<i64> = (0..=diameter).map(|j| pn.a(j)).collect();
    let whole = ctx.intersection_numbers();
    let inherited = (0..=diameter).all(|j| c[j] == whole.c(j) && a[j] == whole.a(j));
    checks.record(
        "WGC c_i, a_i inherited",
        inherited,
        format!("c = {c:?}, a = {a:?}"),
    );
    Ok(WGCSubgraph {
        vertices,
        diameter,
        c,
        a,
        generator,
        checks,
    })
}

/// `η^∨`: the vertices containing `η`, a subspace of `x`.
pub fn eta_vee(ctx: &BaseContext, eta: &FFSubspace) -> Result<WGCSubgraph> {
    let dp = dual_polar(ctx)?;
    let f = dp.field();
    let x = &dp.vertices[ctx.base()];
    if !x.contains_subspace(f, eta) {
        return Err(Error::Precondition("η must be a subspace of x".into()));
    }
    let vertices: Vec<usize> = (0..ctx.order())
        .filter(|&y| dp.vertices[y].contains_subspace(f, eta))
        .collect();
    let i = ctx.diameter() - eta.dim();
    let mut w = profile(ctx, vertices, Some(eta.clone()))?;
    w.checks.record(
        "etaV diameter D - dim η",
        w.diameter == i,
        format!("{} vs {i}", w.diameter),
    );
    let mut top = Vec::new();
    for &y in &w.vertices {
        if ctx.shell_of(y) == i {
            top.push(y);
        }
    }
    let mut keyed = Vec::new();
    for &y in ctx.shell(i) {
        if &meet_with_base(ctx, y)? == eta {
            keyed.push(y);
        }
    }
    keyed.sort_unstable();
    w.checks
        .record("etaV Ω ∩ Γ_i(x) = {x ∩ ξ = η}", top == keyed, "");
    Ok(w)
}

/// The weak-geodetically closed subgraph generated by `y` and `z`, by the
/// naive fixpoint. When one of them is the base vertex the result is
/// compared with `η^∨` for `η = x ∩ (the other)`.
pub fn wgc_closure(ctx: &BaseContext, y: usize, z: usize) -> Result<WGCSubgraph> {
    let n = ctx.order();
    if y >= n || z >= n {
        return Err(Error::Input(format!(
            "vertex out of range for {n} vertices"
        )));
    }
    let dd = ctx.distances();
    let target = dd.dist(y, z);
    let mut inside = vec![false; n];
    let mut set = vec![y];
    inside[y] = true;
    if z != y {
        set.push(z);
        inside[z] = true;
    }
    // Pairs (set[a], set[b]) with b < done are already closed.
    let mut done = 0;
    while done < set.len() {
        let b = done;
        for a in 0..=b {
            let (u, v) = (set[a], set[b]);
            let bound = dd.dist(u, v) + 1;
            let fresh: Vec<usize> = (0..n)
                .filter(|&xi| !inside[xi] && dd.dist(u, xi) + dd.dist(xi, v) <= bound)
                .collect();
            for xi in fresh {
                if set.iter().any(|&w| dd.dist(w, xi) > target) {
                    return Err(Error::Certification(format!(
                        "closure of {y} and {z} has diameter beyond {target}"
                    )));
                }
                inside[xi] = true;
                set.push(xi);
            }
        }
        done += 1;
    }
    set.sort_unstable();
    let generator = if ctx.graph().dual_polar().is_some() && (y == ctx.base() || z == ctx.base()) {
        let other = if y == ctx.base() { z } else { y };
        Some(meet_with_base(ctx, other)?)
    } else {
        None
    };
    let mut w = profile(ctx, set, generator.clone())?;
    w.checks.record(
        "WGCfind diameter ∂(y,z)",
        w.diameter == target,
        format!("{} vs {target}", w.diameter),
    );
    if let Some(eta) = generator {
        let ev = eta_vee(ctx, &eta)?;
        w.checks
            .record("WGCsame closure = η^∨", ev.vertices == w.vertices, "");
    }
    Ok(w)
}

/// Lemma NS2: `Ω ↦ Ω ∩ Γ_i(x)` is a bijection from `{η^∨ : dim η = D - i}`
/// onto the components of `Γ_i(x)`.
pub fn verify_ns2(ctx: &BaseContext, i: usize) -> Result<Report> {
    let dp = nonbipartite(ctx)?;
    let d = ctx.diameter();
    if i > d {
        return Err(Error::Input(format!("slice {i} beyond the diameter")));
    }
    let x = &dp.vertices[ctx.base()];
    let etas = crate::gfspace::enumerate_subspaces(dp.field(), x, d - i)?;
    let mut images = Vec::with_capacity(etas.len());
    for eta in &etas {
        let w = eta_vee(ctx, eta)?;
        let top: Vec<usize> = w
            .vertices
            .into_iter()
            .filter(|&y| ctx.shell_of(y) == i)
            .collect();
        images.push(top);
    }
    let mut comps = shell_components(ctx, i);
    comps.sort();
    let mut sorted = images.clone();
    sorted.sort();
    let injective = sorted.windows(2).all(|p| p[0] != p[1]);
    let mut rep = Report::new();
    rep.record(
        format!("NS2 i={i} injective"),
        injective,
        format!("{} subgraphs", images.len()),
    );
    rep.record(
        format!("NS2 i={i} onto components"),
        sorted == comps,
        format!("{} ↔ {}", images.len(), comps.len()),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::super::tests::ctx;
    use super::*;
    use crate::drg::DualPolarKind;

    #[test]
    fn c22_subgraphs() {
        let c = ctx(DualPolarKind::C, 2, 2);
        let dp = c.graph().dual_polar().unwrap();
        let x = dp.vertices[0].clone();
        let whole = eta_vee(&c, &x).unwrap();
        assert_eq!((whole.vertices.clone(), whole.diameter), (vec![0], 0));
        let zero = FFSubspace::zero(x.ambient_dim());
        let all = eta_vee(&c, &zero).unwrap();
        assert_eq!((all.vertices.len(), all.diameter), (15, 2));
        assert!(all.checks.passed());
        let y = c.shell(1)[0];
        let line = wgc_closure(&c, 0, y).unwrap();
        assert_eq!((line.vertices.len(), line.diameter), (3, 1));
        assert!(line.checks.passed(), "{:?}", line.checks);
        let far = c.shell(2)[0];
        assert_eq!(wgc_closure(&c, 0, far).unwrap().vertices.len(), 15);
        assert_eq!(wgc_closure(&c, y, y).unwrap().vertices, vec![y]);
        for i in 0..=2 {
            assert!(verify_ns2(&c, i).unwrap().passed());
        }
    }
}
