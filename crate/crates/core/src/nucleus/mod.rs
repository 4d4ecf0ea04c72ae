//! The nucleus `N = Σ N_i` with respect to a base vertex, its slices, and its
//! decomposition into thin irreducible modules.

mod decompose;
mod theorems;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

pub use decompose::decompose_nucleus;
pub use theorems::verify_nucleus_theorems;

use crate::error::{Error, Result};
use crate::ratlinalg::{independent_rows, int_kernel, is_direct, rat, sum_all, Rational, Subspace};
use crate::report::Report;
use crate::spectral::BaseContext;
use crate::tmodule::TModuleData;

/// How `E*_i N` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstarMethod {
    /// Image of `N` under `E*_i`.
    Projection,
    /// The `a_i`-eigenspace of the adjacency of the graph induced on `Γ_i(x)`.
    LocalSpectral,
    /// Span of the characteristic vectors of the components of `Γ_i(x)`.
    Components,
}

impl EstarMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Projection => "projection",
            Self::LocalSpectral => "local_spectral",
            Self::Components => "components",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NucleusData {
    pub n_i: Vec<Subspace>,
    pub nucleus: Subspace,
    pub estar_n: Vec<Subspace>,
    pub e_n: Vec<Subspace>,
    /// `mult_r` for `0 ≤ r ≤ D/2`; empty until decomposed.
    pub mult: Vec<usize>,
    pub modules: Vec<TModuleData>,
    pub checks: Report,
}

impl NucleusData {
    pub fn dim(&self) -> usize {
        self.nucleus.dim()
    }

    pub fn to_json(&self) -> Value {
        let dims = |v: &[Subspace]| v.iter().map(Subspace::dim).collect::<Vec<_>>();
        json!({
            "dim": self.dim(),
            "N_i": dims(&self.n_i),
            "EstarN": dims(&self.estar_n),
            "EN": dims(&self.e_n),
            "mult": self.mult,
            "modules": self.modules.iter().map(TModuleData::to_json).collect::<Vec<_>>(),
            "checks": self.checks,
        })
    }
}

/// `Σ_{b∈set} c E_b` as an integer distance profile, for the least `c > 0`
/// that clears denominators.
fn scaled_profile(ctx: &BaseContext, set: &[usize]) -> Vec<i64> {
    let sd = ctx.spectral();
    let w = ctx.diameter() + 1;
    let l = set.iter().fold(BigInt::from(1), |acc, &b| {
        acc.lcm(&BigInt::from(sd.lagrange(b).1))
    });
    let l = l.to_i128().expect("denominator fits");
    (0..w)
        .map(|dist| {
            let s: i128 = set
                .iter()
                .map(|&b| {
                    let (num, den) = sd.lagrange(b);
                    num[dist] as i128 * (l / den as i128)
                })
                .sum();
            i64::try_from(s).expect("scaled idempotent entry fits")
        })
        .collect()
}

/// `(E*_0V + ... + E*_iV) ∩ (E_0V + ... + E_jV)`.
///
/// Solved as a kernel over whichever side has fewer unknowns: coordinates on
/// `Γ_0(x) ∪ ... ∪ Γ_i(x)` killed by `Σ_{b>j} E_b`, or coefficients over a
/// column basis of `Σ_{b≤j} E_b` whose entries off that set vanish.
pub fn prefix_intersection(ctx: &BaseContext, i: usize, j: usize) -> Subspace {
    let n = ctx.order();
    let big_d = ctx.diameter();
    let dd = ctx.distances();
    let support: Vec<usize> = (0..n).filter(|&y| ctx.shell_of(y) <= i).collect();
    if j >= big_d {
        return Subspace::coordinate(n, support);
    }
    let s = support.len();
    let m: usize = (0..=j).map(|b| ctx.spectral().mult(b)).sum();
    if s <= m {
        let g = scaled_profile(ctx, &(j + 1..=big_d).collect::<Vec<_>>());
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|y| support.iter().map(|&z| g[dd.dist(y, z)]).collect())
            .collect();
        let ker = int_kernel(&rows, s);
        let vecs = ker.basis().iter().map(|c| {
            let mut v = vec![Rational::zero(); n];
            for (k, &z) in support.iter().enumerate() {
                v[z] = c[k].clone();
            }
            v
        });
        Subspace::span(n, vecs.collect::<Vec<_>>())
    } else {
        let h = scaled_profile(ctx, &(0..=j).collect::<Vec<_>>());
        let column = |z: usize| -> Vec<i64> { (0..n).map(|y| h[dd.dist(y, z)]).collect() };
        let cols = independent_rows((0..n).map(column), m);
        if cols.len() < m {
            // The modular rank fell short; intersect exactly instead.
            let spectral = Subspace::span(
                n,
                (0..n)
                    .map(|z| column(z).into_iter().map(rat).collect())
                    .collect::<Vec<_>>(),
            );
            return Subspace::coordinate(n, support)
                .intersect(&spectral)
                .expect("same ambient dimension");
        }
        let outside: Vec<usize> = (0..n).filter(|&y| ctx.shell_of(y) > i).collect();
        let rows: Vec<Vec<i64>> = outside
            .iter()
            .map(|&y| cols.iter().map(|&z| h[dd.dist(y, z)]).collect())
            .collect();
        let ker = int_kernel(&rows, cols.len());
        let vecs = ker.basis().iter().map(|c| {
            let mut v = vec![Rational::zero(); n];
            for (coef, &z) in c.iter().zip(&cols) {
                if coef.is_zero() {
                    continue;
                }
                for (y, x) in v.iter_mut().enumerate() {
                    let e = h[dd.dist(y, z)];
                    if e != 0 {
                        *x += coef * rat(e);
                    }
                }
            }
            v
        });
        Subspace::span(n, vecs.collect::<Vec<_>>())
    }
}

/// `N_i = (E*_0V + ... + E*_iV) ∩ (E_0V + ... + E_{D-i}V)`.
pub fn nucleus_spaces(ctx: &BaseContext) -> Vec<Subspace> {
    let d = ctx.diameter();
    (0..=d)
        .map(|i| prefix_intersection(ctx, i, d - i))
        .collect()
}

/// Checks that the prefix intersections vanish for `i + j < D`.
pub fn zero_intersections(ctx: &BaseContext) -> Report {
    let d = ctx.diameter();
    let mut bad = Vec::new();
    for i in 0..d {
        for j in 0..d - i {
            if !prefix_intersection(ctx, i, j).is_zero() {
                bad.push(format!("({i},{j})"));
            }
        }
    }
    let mut rep = Report::new();
    rep.record("zeroInt", bad.is_empty(), bad.join(" "));
    rep
}

/// Computes `N` and its slices, certifying directness, T-invariance, the
/// raising/lowering action on the `N_i` and the two orthogonal direct
/// decompositions `N = Σ E*_iN = Σ E_iN`.
pub fn nucleus(ctx: &BaseContext) -> Result<NucleusData> {
    let n = ctx.order();
    let d = ctx.diameter();
    let n_i = nucleus_spaces(ctx);
    let mut checks = zero_intersections(ctx);
    let total = sum_all(n, &n_i);
    checks.record(
        "UDir",
        is_direct(&n_i)?,
        format!("{:?}", n_i.iter().map(Subspace::dim).collect::<Vec<_>>()),
    );
    let inv_a = total.is_invariant(|v| ctx.apply_a(v));
    let inv_as = total.is_invariant(|v| ctx.apply_astar(v));
    checks.record(
        "ND",
        inv_a && inv_as,
        format!("A-invariant {inv_a}, A*-invariant {inv_as}"),
    );

    let zero = Subspace::zero(n);
    let mut raise_bad = Vec::new();
    let mut lower_bad = Vec::new();
    for i in 0..=d {
        let th = rat(ctx.theta(d - i));
        let up = n_i[i].map(|v| {
            ctx.apply_a(v)
                .into_iter()
                .zip(v)
                .map(|(a, b)| a - &th * b)
                .collect()
        });
        if !n_i.get(i + 1).unwrap_or(&zero).contains_subspace(&up) {
            raise_bad.push(i);
        }
        let ts = ctx.theta_star(i);
        let down = n_i[i].map(|v| {
            ctx.apply_astar(v)
                .into_iter()
                .zip(v)
                .map(|(a, b)| a - ts * b)
                .collect()
        });
        let below = if i == 0 { &zero } else { &n_i[i - 1] };
        if !below.contains_subspace(&down) {
            lower_bad.push(i);
        }
    }
    checks.record(
        "AAact (A - θ_{D-i})N_i ⊆ N_{i+1}",
        raise_bad.is_empty(),
        format!("{raise_bad:?}"),
    );
    checks.record(
        "AAact (A* - θ*_i)N_i ⊆ N_{i-1}",
        lower_bad.is_empty(),
        format!("{lower_bad:?}"),
    );

    let estar_n: Vec<Subspace> = (0..=d)
        .map(|i| total.map(|v| ctx.apply_estar(i, v)))
        .collect();
    let e_n: Vec<Subspace> = (0..=d).map(|i| total.map(|v| ctx.apply_e(i, v))).collect();
    let orthogonal =
        |s: &[Subspace]| (0..s.len()).all(|i| (0..i).all(|j| s[i].is_orthogonal_to(&s[j])));
    let two_sum = is_direct(&estar_n)?
        && is_direct(&e_n)?
        && sum_all(n, &estar_n) == total
        && sum_all(n, &e_n) == total
        && orthogonal(&estar_n)
        && orthogonal(&e_n);
    checks.record("TwoSum", two_sum, "");
    Ok(NucleusData {
        n_i,
        nucleus: total,
        estar_n,
        e_n,
        mult: Vec::new(),
        modules: Vec::new(),
        checks,
    })
}

/// Connected components of the graph induced on `Γ_i(x)`, each sorted, in
/// order of least vertex.
pub fn shell_components(ctx: &BaseContext, i: usize) -> Vec<Vec<usize>> {
    let g = ctx.graph();
    let mut seen = vec![false; ctx.order()];
    let mut out = Vec::new();
    for &s in ctx.shell(i) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            k += 1;
            for &v in g.neighbors(u) {
                if !seen[v] && ctx.shell_of(v) == i {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub(crate) fn indicator(n: usize, set: &[usize]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for &y in set {
        v[y] = rat(1);
    }
    v
}

/// `E*_i N` by the chosen method. The local methods are only defined for
/// nonbipartite dual polar graphs.
pub fn estar_nucleus(
    ctx: &BaseContext,
    nd: &NucleusData,
    i: usize,
    method: EstarMethod,
) -> Result<Subspace> {
    let n = ctx.order();
    if i > ctx.diameter() {
        return Err(Error::Input(format!("slice {i} beyond the diameter")));
    }
    if method != EstarMethod::Projection && !ctx.graph().is_nonbipartite_dual_polar() {
        return Err(Error::Precondition(format!(
            "{} needs a nonbipartite dual polar graph",
            method.name()
        )));
    }
    Ok(match method {
        EstarMethod::Projection => nd.estar_n[i].clone(),
        EstarMethod::LocalSpectral => {
            let shell = ctx.shell(i);
            let ai = ctx.intersection_numbers().a(i);
            let g = ctx.graph();
            let rows: Vec<Vec<i64>> = shell
                .iter()
                .map(|&y| {
                    shell
                        .iter()
                        .map(|&z| i64::from(g.is_adjacent(y, z)) - if y == z { ai } else { 0 })
                        .collect()
                })
                .collect();
            let ker = int_kernel(&rows, shell.len());
            let vecs = ker.basis().iter().map(|c| {
                let mut v = vec![Rational::zero(); n];
                for (k, &y) in shell.iter().enumerate() {
                    v[y] = c[k].clone();
                }
                v
            });
            Subspace::span(n, vecs.collect::<Vec<_>>())
        }
        EstarMethod::Components => Subspace::span(
            n,
            shell_components(ctx, i)
                .iter()
                .map(|c| indicator(n, c))
                .collect::<Vec<_>>(),
        ),
    })
}
