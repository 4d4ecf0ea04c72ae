//! The projective geometry on the subspaces of the base vertex, for dual
//! polar graphs: ∼ classes, the poset 𝒫, weak-geodetically closed
//! subgraphs and the operator describing `A` on the nucleus.

mod pmain;
mod wgc;

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

pub use pmain::{pmain_operator, PmainData};
pub use wgc::{eta_vee, verify_ns2, wgc_closure, WGCSubgraph};

use crate::drg::{DualPolarData, DualPolarParams};
use crate::error::{Error, Result};
use crate::gfspace::{enumerate_subspaces, FFSubspace};
use crate::nucleus::{indicator, shell_components, NucleusData};
use crate::qbinom::binom2;
use crate::report::Report;
use crate::spectral::BaseContext;

fn dual_polar(ctx: &BaseContext) -> Result<&DualPolarData> {
    ctx.graph()
        .dual_polar()
        .ok_or_else(|| Error::Precondition("needs a dual polar graph".into()))
}

fn nonbipartite(ctx: &BaseContext) -> Result<&DualPolarData> {
    let dp = dual_polar(ctx)?;
    if dp.params.is_bipartite() {
        return Err(Error::Precondition(
            "needs a nonbipartite dual polar graph".into(),
        ));
    }
    Ok(dp)
}

/// `x ∩ y` for the base vertex `x`.
pub fn meet_with_base(ctx: &BaseContext, y: usize) -> Result<FFSubspace> {
    let dp = dual_polar(ctx)?;
    let x = &dp.vertices[ctx.base()];
    Ok(x.intersect(dp.field(), &dp.vertices[y]))
}

/// One ∼ class: a connected component of some `Γ_i(x)`.
#[derive(Clone, Debug)]
pub struct SimClass {
    pub distance: usize,
    /// Sorted vertex indices.
    pub members: Vec<usize>,
    /// The common value of `x ∩ y` over the members.
    pub key: FFSubspace,
}

impl SimClass {
    pub fn characteristic(&self, n: usize) -> Vec<crate::ratlinalg::Rational> {
        indicator(n, &self.members)
    }
}

#[derive(Clone, Debug)]
pub struct EquivClasses {
    /// `classes[i]` lists the classes inside `Γ_i(x)`, ordered by key.
    pub classes: Vec<Vec<SimClass>>,
    pub checks: Report,
}

impl EquivClasses {
    pub fn count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Class index (in flattened order) of every vertex.
    pub fn class_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (c, cl) in self.classes.iter().flatten().enumerate() {
            for &y in &cl.members {
                out[y] = c;
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "counts": self.classes.iter().map(Vec::len).collect::<Vec<_>>(),
            "sizes": self.classes.iter().map(|c| c.first().map_or(0, |x| x.members.len())).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn class_size(p: &DualPolarParams, i: usize) -> i64 {
    (p.a1() + 1).pow(i as u32) * p.q().pow(binom2(i as u32))
}

/// The ∼ classes, computed as components of each `Γ_i(x)` and again by
/// grouping on `x ∩ y`; the two partitions must coincide.
pub fn sim_classes(ctx: &BaseContext) -> Result<EquivClasses> {
    let dp = nonbipartite(ctx)?;
    let p = &dp.params;
    let d = ctx.diameter();
    let mut checks = Report::new();
    let mut classes = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut by_key: BTreeMap<FFSubspace, Vec<usize>> = BTreeMap::new();
        for &y in ctx.shell(i) {
            by_key.entry(meet_with_base(ctx, y)?).or_default().push(y);
        }
        let mut comps = shell_components(ctx, i);
        comps.sort();
        let mut keyed: Vec<Vec<usize>> = by_key.values().cloned().collect();
        keyed.iter_mut().for_each(|c| c.sort_unstable());
        keyed.sort();
        if comps != keyed {
            return Err(Error::Certification(format!(
                "Γ_{i}(x): {} components but {} values of x ∩ y",
                comps.len(),
                keyed.len()
            )));
        }
        classes.push(
            by_key
                .into_iter()
                .map(|(key, mut members)| {
                    members.sort_unstable();
                    SimClass {
                        distance: i,
                        members,
                        key,
                    }
                })
                .collect::<Vec<_>>(),
        );
    }
    let counts: Vec<usize> = classes.iter().map(Vec::len).collect();
    let expect: Vec<usize> = (0..=d).map(|i| p.qbinom(i) as usize).collect();
    checks.record(
        "cc counts",
        counts == expect,
        format!("{counts:?} vs {expect:?}"),
    );
    let bad: Vec<String> = classes
        .iter()
        .flatten()
        .filter(|c| c.members.len() as i64 != class_size(p, c.distance))
        .map(|c| format!("size {} at distance {}", c.members.len(), c.distance))
        .collect();
    checks.record("cc sizes", bad.is_empty(), bad.join("; "));
    let keys_ok = classes
        .iter()
        .flatten()
        .all(|c| c.key.dim() == d - c.distance);
    checks.record("simE", keys_ok, "dim x ∩ y = D - i");
    Ok(EquivClasses { classes, checks })
}

/// The poset of subspaces of `x`, grade-major: `𝒫_i` holds the subspaces of
/// dimension `D - i` in canonical order.
#[derive(Clone, Debug)]
pub struct PosetP {
    pub elements: Vec<FFSubspace>,
    pub grade: Vec<usize>,
    /// Neighbours in `𝒫_{i+1}` (codimension-one subspaces).
    pub up: Vec<Vec<usize>>,
    /// Neighbours in `𝒫_{i-1}` (covering subspaces).
    pub down: Vec<Vec<usize>>,
    /// `η^N`: the sorted set `{y : x ∩ y = η}`.
    pub eta_n: Vec<Vec<usize>>,
    pub checks: Report,
}

impl PosetP {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn grade_range(&self, i: usize) -> std::ops::Range<usize> {
        let lo = self.grade.partition_point(|&g| g < i);
        let hi = self.grade.partition_point(|&g| g <= i);
        lo..hi
    }

    pub fn to_json(&self) -> Value {
        let top = self.grade.last().map_or(0, |g| g + 1);
        json!({
            "counts": (0..top).map(|i| self.grade_range(i).len()).collect::<Vec<_>>(),
            "elements": self.elements.iter().zip(&self.grade).map(|(e, g)| json!({"grade": g, "basis": e.basis()})).collect::<Vec<_>>(),
            "covers": self.up.iter().enumerate().flat_map(|(a, ups)| ups.iter().map(move |&b| [a, b])).collect::<Vec<_>>(),
        })
    }
}

/// Builds 𝒫 with its covers and `η^N` sets, certifying the grade counts and
/// cover degrees. For nonbipartite graphs the `η^N` are certified equal to
/// the ∼ class vectors.
pub fn build_poset(ctx: &BaseContext) -> Result<PosetP> {
    let dp = dual_polar(ctx)?;
    let f = dp.field();
    let p = &dp.params;
    let d = ctx.diameter();
    let x = &dp.vertices[ctx.base()];
    let mut elements = Vec::new();
    let mut grade = Vec::new();
    for i in 0..=d {
        let g = enumerate_subspaces(f, x, d - i)?;
        grade.extend(std::iter::repeat_n(i, g.len()));
        elements.extend(g);
    }
    let index: HashMap<&FFSubspace, usize> =
        elements.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let m = elements.len();
    let mut up = vec![Vec::new(); m];
    let mut down = vec![Vec::new(); m];
    for a in 0..m {
        for b in 0..m {
            if grade[b] == grade[a] + 1 && elements[a].contains_subspace(f, &elements[b]) {
                up[a].push(b);
                down[b].push(a);
            }
        }
    }
    let mut eta_n = vec![Vec::new(); m];
    for y in 0..ctx.order() {
        let k = meet_with_base(ctx, y)?;
        eta_n[index[&k]].push(y);
    }

    let mut checks = Report::new();
    let counts: Vec<usize> = (0..=d)
        .map(|i| grade.iter().filter(|&&g| g == i).count())
        .collect();
    let expect: Vec<usize> = (0..=d).map(|i| p.qbinom(i) as usize).collect();
    checks.record(
        "SZ |𝒫_i| = [D i]_q",
        counts == expect,
        format!("{counts:?}"),
    );
    let bad: Vec<usize> = (0..m)
        .filter(|&a| {
            let i = grade[a];
            up[a].len() as i64 != p.qint(d - i) || down[a].len() as i64 != p.qint(i)
        })
        .collect();
    checks.require("YYi cover counts", &bad);
    let bad: Vec<usize> = (0..m)
        .filter(|&a| eta_n[a].iter().any(|&y| ctx.shell_of(y) != grade[a]))
        .collect();
    checks.require("etaN grade", &bad);
    if p.is_bipartite() {
        checks.skip("bij η^N = class vectors", "bipartite");
    } else {
        let classes = sim_classes(ctx)?;
        let mut class_sets: Vec<&Vec<usize>> = classes
            .classes
            .iter()
            .flatten()
            .map(|c| &c.members)
            .collect();
        let mut eta_sets: Vec<&Vec<usize>> = eta_n.iter().collect();
        class_sets.sort();
        eta_sets.sort();
        checks.record(
            "bij η^N = class vectors",
            class_sets == eta_sets,
            format!("{} classes, {} elements", class_sets.len(), eta_sets.len()),
        );
    }
    Ok(PosetP {
        elements,
        grade,
        up,
        down,
        eta_n,
        checks,
    })
}

/// Theorem bij: `|𝒫| = dim N` and every `η^N` lies in `E*_i N`.
pub fn verify_bij(ctx: &BaseContext, poset: &PosetP, nd: &NucleusData) -> Report {
    let mut rep = Report::new();
    rep.record(
        "bij |𝒫| = dim N",
        poset.len() == nd.dim(),
        format!("{} vs {}", poset.len(), nd.dim()),
    );
    let n = ctx.order();
    let bad: Vec<usize> = (0..poset.len())
        .filter(|&a| {
            poset.eta_n[a].is_empty()
                || !nd.estar_n[poset.grade[a]].contains(&indicator(n, &poset.eta_n[a]))
        })
        .collect();
    rep.require("bij η^N ∈ E*_i N", &bad);
    rep
}
