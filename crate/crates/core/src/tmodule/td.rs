use num_traits::Zero;
use serde_json::{json, Value};

use super::{raising_polys, thin_certificate, tridiagonal_matrix, TModuleData};
use crate::error::{Error, Result};
use crate::ratlinalg::{is_direct, rat, rat_to_string, sum_all, Rational, Subspace};
use crate::report::Report;
use crate::spectral::BaseContext;

/// Result of checking that `A, A*` act on a module as a tridiagonal pair,
/// with the split decomposition and module intersection numbers.
#[derive(Clone, Debug)]
pub struct TDSystemReport {
    pub endpoint: usize,
    pub dual_endpoint: usize,
    pub diameter: usize,
    /// `θ_{t+i}`, the ordering of the `A`-eigenspaces used.
    pub theta: Vec<i64>,
    /// `θ*_{r+i}`.
    pub theta_star: Vec<Rational>,
    /// `dim U_i`.
    pub split_dims: Vec<usize>,
    /// Coefficients (low to high) of `f_i(λ) = Π_{k<i}(λ - θ_{t+d-k})`.
    pub raising_polys: Vec<Vec<i64>>,
    pub leonard: bool,
    /// `A_D E*_r W = E*_{D-r} W` and `A*_D E_r W = E_{D-r} W`; only checked
    /// at displacement 0.
    pub ad_mapping: Option<bool>,
    pub c: Vec<Rational>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub checks: Report,
}

impl TDSystemReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[Rational]| v.iter().map(rat_to_string).collect::<Vec<_>>();
        json!({
            "r": self.endpoint,
            "t": self.dual_endpoint,
            "d": self.diameter,
            "theta": self.theta,
            "theta_star": s(&self.theta_star),
            "split_dims": self.split_dims,
            "raising_polys": self.raising_polys,
            "leonard": self.leonard,
            "ad_mapping": self.ad_mapping,
            "c": s(&self.c),
            "a": s(&self.a),
            "b": s(&self.b),
            "checks": self.checks,
        })
    }
}

/// Verifies the tridiagonal system of a thin irreducible module, in the
/// orderings `E_{t+i}`, `E*_{r+i}` inherited from the graph.
pub fn verify_td_system(ctx: &BaseContext, m: &TModuleData) -> Result<TDSystemReport> {
    if !m.thin || !m.irreducible_certified {
        return Err(Error::Precondition(
            "module is not a certified thin irreducible".into(),
        ));
    }
    let n = ctx.order();
    let big_d = ctx.diameter();
    let (r, t, d) = (m.endpoint, m.dual_endpoint, m.diameter);
    let mut rep = Report::new();
    rep.record(
        "d = δ",
        d == m.dual_diameter,
        format!("d = {d}, δ = {}", m.dual_diameter),
    );
    if d != m.dual_diameter {
        return Err(Error::Certification(format!(
            "module has d = {d} but δ = {}",
            m.dual_diameter
        )));
    }
    let v: Vec<&Subspace> = (0..=d).map(|i| &m.e[t + i]).collect();
    let vs: Vec<&Subspace> = (0..=d).map(|i| &m.estar[r + i]).collect();
    let window = |s: &[&Subspace], i: usize| -> Subspace {
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(d);
        sum_all(
            n,
            &s[lo..=hi].iter().map(|x| (*x).clone()).collect::<Vec<_>>(),
        )
    };
    let block_tri_star =
        (0..=d).all(|i| window(&v, i).contains_subspace(&v[i].map(|x| ctx.apply_astar(x))));
    rep.record("A* V_i ⊆ V_{i-1} + V_i + V_{i+1}", block_tri_star, "");
    let block_tri =
        (0..=d).all(|i| window(&vs, i).contains_subspace(&vs[i].map(|x| ctx.apply_a(x))));
    rep.record("A V*_i ⊆ V*_{i-1} + V*_i + V*_{i+1}", block_tri, "");

    // Split decomposition.
    let prefix = |s: &[&Subspace], k: usize| {
        sum_all(n, &s[..=k].iter().map(|x| (*x).clone()).collect::<Vec<_>>())
    };
    let u: Vec<Subspace> = (0..=d)
        .map(|i| prefix(&vs, i).intersect(&prefix(&v, d - i)))
        .collect::<Result<_>>()?;
    let split_dims: Vec<usize> = u.iter().map(Subspace::dim).collect();
    rep.record(
        "U_0 + ... + U_d direct",
        is_direct(&u)?,
        format!("{split_dims:?}"),
    );
    rep.record(
        "U_0 + ... + U_d = W",
        split_dims.iter().sum::<usize>() == m.dim(),
        "",
    );
    rep.record(
        "dim U_i = ρ_i",
        split_dims == m.shape,
        format!("{split_dims:?} vs {:?}", m.shape),
    );

    let raise = |i: usize, x: &[Rational]| -> Vec<Rational> {
        let th = rat(ctx.theta(t + d - i));
        ctx.apply_a(x)
            .into_iter()
            .zip(x)
            .map(|(a, b)| a - &th * b)
            .collect()
    };
    let up_ok = (0..d).all(|i| u[i + 1].contains_subspace(&u[i].map(|x| raise(i, x))));
    rep.record("R U_i ⊆ U_{i+1}", up_ok, "");
    rep.record("R U_d = 0", u[d].map(|x| raise(d, x)).is_zero(), "");
    let mut img = u[0].clone();
    for i in 0..d {
        img = img.map(|x| raise(i, x));
    }
    rep.record(
        "R^d : U_0 → U_d bijective",
        img == u[d] && u[0].dim() == u[d].dim(),
        format!("dim U_0 = {}, dim R^d U_0 = {}", u[0].dim(), img.dim()),
    );
    let lower = |i: usize, x: &[Rational]| -> Vec<Rational> {
        let th = ctx.theta_star(r + i);
        ctx.apply_astar(x)
            .into_iter()
            .zip(x)
            .map(|(a, b)| a - th * b)
            .collect()
    };
    let down_ok = (0..=d).all(|i| {
        let img = u[i].map(|x| lower(i, x));
        if i == 0 {
            img.is_zero()
        } else {
            u[i - 1].contains_subspace(&img)
        }
    });
    rep.record("(A* - θ*_{r+i}) U_i ⊆ U_{i-1}", down_ok, "");

    // Leonard: A irreducible tridiagonal on an A*-eigenbasis and vice versa.
    let e_basis: Vec<Vec<Rational>> = v.iter().map(|s| s.basis()[0].clone()).collect();
    let leonard = thin_certificate(ctx, m).is_some()
        && tridiagonal_matrix(&e_basis, |x| ctx.apply_astar(x)).is_some();
    rep.record(
        "Leonard iff ρ_i = 1",
        leonard == m.shape.iter().all(|&s| s == 1),
        format!("leonard = {leonard}"),
    );

    let polys = raising_polys(ctx, t, d);
    let v0 = vs[0].basis()[0].clone();
    let images = Subspace::span(
        n,
        polys
            .iter()
            .map(|p| ctx.apply_poly(p, &v0))
            .collect::<Vec<_>>(),
    );
    rep.record("f_i(A) v independent", images.dim() == d + 1, "");

    let ad_mapping = (m.displacement == 0).then(|| {
        let a_d = vs[0].map(|x| ctx.apply_a_dist(big_d, x)) == m.estar[big_d - r];
        let as_d = m.e[r].map(|x| ctx.apply_astar_i(big_d, x)) == m.e[big_d - r];
        rep.record("A_D E*_r W = E*_{D-r} W", a_d, "");
        rep.record("A*_D E_r W = E_{D-r} W", as_d, "");
        a_d && as_d
    });
    if ad_mapping.is_none() {
        rep.skip("A_D E*_r W = E*_{D-r} W", "displacement is not 0");
    }

    // w_i = E*_{r+i} u for u spanning E_t W; then A w_i = b_{i-1}(W) w_{i-1} + a_i(W) w_i + c_{i+1}(W) w_{i+1}.
    let u0 = &e_basis[0];
    let w: Vec<Vec<Rational>> = (0..=d).map(|i| ctx.apply_estar(r + i, u0)).collect();
    let (mut c, mut a, mut b) = (
        vec![Rational::zero(); d + 1],
        vec![Rational::zero(); d + 1],
        vec![Rational::zero(); d + 1],
    );
    match tridiagonal_matrix(&w, |x| ctx.apply_a(x)) {
        Some(mat) => {
            for i in 0..=d {
                a[i] = mat.get(i, i).clone();
                if i > 0 {
                    c[i] = mat.get(i, i - 1).clone();
                }
                if i < d {
                    b[i] = mat.get(i, i + 1).clone();
                }
            }
            let th = rat(ctx.theta(t));
            rep.record(
                "c_i(W) + a_i(W) + b_i(W) = θ_t",
                (0..=d).all(|i| &c[i] + &a[i] + &b[i] == th),
                "",
            );
        }
        None => {
            rep.record(
                "module intersection numbers",
                false,
                "A is not tridiagonal on E*_{r+i} u",
            );
        }
    }
    if let Some(dp) = ctx.graph().dual_polar() {
        let p = &dp.params;
        let q = rat(p.q());
        let a1 = rat(p.a1());
        let one = rat(1);
        let pw = |e: usize| num_traits::pow(q.clone(), e);
        let base = big_d - d - t;
        let ok = |xs: &[Rational], f: &dyn Fn(usize) -> Rational| -> (bool, String) {
            let bad: Vec<String> = (0..=d)
                .filter(|&i| xs[i] != f(i))
                .map(|i| format!("i={i}: {} vs {}", xs[i], f(i)))
                .collect();
            (bad.is_empty(), bad.join("; "))
        };
        let (okc, dc) = ok(&c, &|i| pw(t) * (pw(i) - &one) / (&q - &one));
        let (oka, da) = ok(&a, &|i| {
            ((&a1 + &one) * pw(base + i) - pw(t + i) - &a1) / (&q - &one)
        });
        let (okb, db) = ok(&b, &|i| {
            (&a1 + &one) * (pw(big_d - t) - pw(base + i)) / (&q - &one)
        });
        rep.record("c_i(W) closed form", okc, dc);
        rep.record("a_i(W) closed form", oka, da);
        rep.record("b_i(W) closed form", okb, db);
        if m.displacement == 0 {
            let pn = ctx.intersection_numbers();
            let views = (0..=d).all(|i| a[i] == rat(pn.a(r + i)));
            rep.record("a_i(W) = a_{r+i}", views, "");
        }
    }
    rep.record("2r - D + d ≥ 0", 2 * r + d >= big_d, "");
    rep.record("2t - D + d ≥ 0", 2 * t + d >= big_d, "");

    Ok(TDSystemReport {
        endpoint: r,
        dual_endpoint: t,
        diameter: d,
        theta: (0..=d).map(|i| ctx.theta(t + i)).collect(),
        theta_star: (0..=d).map(|i| ctx.theta_star(r + i).clone()).collect(),
        split_dims,
        raising_polys: polys,
        leonard,
        ad_mapping,
        c,
        a,
        b,
        checks: rep,
    })
}
