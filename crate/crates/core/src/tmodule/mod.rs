//! T-modules relative to a base vertex: closure, profiling, tridiagonal
//! system verification and explicit isomorphisms.

mod iso;
mod td;

use num_traits::Zero;
use serde_json::{json, Value};

pub use iso::{module_isomorphism, ModuleIsomorphism};
pub use td::{verify_td_system, TDSystemReport};

use crate::error::{Error, Result};
use crate::ratlinalg::{RatMatrix, Rational, Subspace};
use crate::report::Report;
use crate::spectral::BaseContext;

/// Smallest subspace containing `v` and closed under `A` and `A*`.
pub fn t_closure(ctx: &BaseContext, v: &[Rational]) -> Result<Subspace> {
    let n = ctx.order();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    t_closure_of(ctx, vec![v.to_vec()])
}

/// Closure of the span of several vectors.
pub fn t_closure_of(ctx: &BaseContext, seeds: Vec<Vec<Rational>>) -> Result<Subspace> {
    let n = ctx.order();
    let mut w = Subspace::span(n, seeds.clone());
    let mut frontier = seeds;
    // Each round either grows the space or empties the frontier.
    for _ in 0..=n {
        let mut next = Vec::new();
        for u in &frontier {
            for img in [ctx.apply_a(u), ctx.apply_astar(u)] {
                if !w.contains(&img) {
                    w = w.sum(&Subspace::span(n, [img.clone()]))?;
                    next.push(img);
                }
            }
        }
        if next.is_empty() {
            return Ok(w);
        }
        frontier = next;
    }
    unreachable!("closure dimension is bounded by the ambient dimension")
}

/// Endpoints, diameters and shape of a T-invariant subspace.
///
/// `r` and `δ` come from the support of `E*_i W`, `t` and `d` from the
/// support of `E_i W`. The shape is `ρ_i = dim E*_{r+i} W`.
#[derive(Clone, Debug)]
pub struct TModuleData {
    pub space: Subspace,
    pub endpoint: usize,
    pub dual_endpoint: usize,
    pub diameter: usize,
    pub dual_diameter: usize,
    pub shape: Vec<usize>,
    pub displacement: i64,
    pub thin: bool,
    pub irreducible_certified: bool,
    /// `E*_i W` for every `0 ≤ i ≤ D`.
    pub estar: Vec<Subspace>,
    /// `E_i W` for every `0 ≤ i ≤ D`.
    pub e: Vec<Subspace>,
}

fn support(slices: &[Subspace]) -> (usize, usize) {
    let first = slices.iter().position(|s| !s.is_zero()).unwrap_or(0);
    let last = slices.iter().rposition(|s| !s.is_zero()).unwrap_or(0);
    (first, last)
}

/// Profiles `w`; fails with the offending operator when `w` is not
/// T-invariant.
pub fn module_profile(ctx: &BaseContext, w: &Subspace) -> Result<TModuleData> {
    if w.ambient_dim() != ctx.order() {
        return Err(Error::AmbientMismatch(ctx.order(), w.ambient_dim()));
    }
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !w.is_invariant(|v| ctx.apply_a(v)) {
        return Err(Error::NotInvariant("A"));
    }
    if !w.is_invariant(|v| ctx.apply_astar(v)) {
        return Err(Error::NotInvariant("A*"));
    }
    let dd = ctx.diameter();
    let estar: Vec<Subspace> = (0..=dd).map(|i| w.map(|v| ctx.apply_estar(i, v))).collect();
    let e: Vec<Subspace> = (0..=dd).map(|i| w.map(|v| ctx.apply_e(i, v))).collect();
    let (r, r_last) = support(&estar);
    let (t, t_last) = support(&e);
    let delta = r_last - r;
    let d = t_last - t;
    let shape: Vec<usize> = estar[r..=r_last].iter().map(Subspace::dim).collect();
    let thin = shape.iter().all(|&s| s <= 1);
    let mut m = TModuleData {
        space: w.clone(),
        endpoint: r,
        dual_endpoint: t,
        diameter: d,
        dual_diameter: delta,
        shape,
        displacement: (r + t + d) as i64 - dd as i64,
        thin,
        irreducible_certified: false,
        estar,
        e,
    };
    m.irreducible_certified = thin_certificate(ctx, &m).is_some();
    Ok(m)
}

/// Matrix of `A` in the basis `w_i` spanning `E*_{r+i}W`, when `W` is thin,
/// that basis spans `W`, the matrix is tridiagonal with nonzero sub- and
/// superdiagonal, and `A*` has distinct eigenvalues on it. Such a module is
/// irreducible.
pub fn thin_certificate(ctx: &BaseContext, m: &TModuleData) -> Option<RatMatrix> {
    if !m.thin || m.space.dim() != m.dual_diameter + 1 {
        return None;
    }
    let r = m.endpoint;
    let basis: Vec<Vec<Rational>> = (0..=m.dual_diameter)
        .map(|i| m.estar[r + i].basis()[0].clone())
        .collect();
    let mat = tridiagonal_matrix(&basis, |v| ctx.apply_a(v))?;
    let stars: Vec<&Rational> = (0..=m.dual_diameter)
        .map(|i| ctx.theta_star(r + i))
        .collect();
    let distinct = (0..stars.len()).all(|i| !stars[..i].contains(&stars[i]));
    distinct.then_some(mat)
}

/// Matrix of `f` in `basis` (column `i` holds the coordinates of
/// `f(basis_i)`), if it is irreducible tridiagonal.
pub(crate) fn tridiagonal_matrix(
    basis: &[Vec<Rational>],
    f: impl Fn(&[Rational]) -> Vec<Rational>,
) -> Option<RatMatrix> {
    let k = basis.len();
    let mut mat = RatMatrix::zeros(k, k);
    for (i, b) in basis.iter().enumerate() {
        let coords = crate::ratlinalg::coordinates_in(basis, &f(b))?;
        for (j, c) in coords.into_iter().enumerate() {
            let off = i.abs_diff(j);
            if (off > 1 && !c.is_zero()) || (off == 1 && c.is_zero()) {
                return None;
            }
            mat.set(j, i, c);
        }
    }
    Some(mat)
}

impl TModuleData {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The structural invariants every irreducible module satisfies.
    pub fn invariants(&self) -> Report {
        let mut rep = Report::new();
        let contiguous = |s: &[Subspace], lo: usize, len: usize| {
            s.iter()
                .enumerate()
                .all(|(i, x)| x.is_zero() != (lo..=lo + len).contains(&i))
        };
        rep.record(
            "d = δ",
            self.diameter == self.dual_diameter,
            format!("d = {}, δ = {}", self.diameter, self.dual_diameter),
        );
        rep.record(
            "E*-support contiguous",
            contiguous(&self.estar, self.endpoint, self.dual_diameter),
            "",
        );
        rep.record(
            "E-support contiguous",
            contiguous(&self.e, self.dual_endpoint, self.diameter),
            "",
        );
        let e_shape: Vec<usize> = (0..=self.diameter)
            .map(|i| self.e[self.dual_endpoint + i].dim())
            .collect();
        rep.record(
            "E and E* shapes agree",
            e_shape == self.shape,
            format!("{e_shape:?} vs {:?}", self.shape),
        );
        let s = &self.shape;
        rep.record(
            "ρ_i = ρ_{d-i}",
            s.iter().eq(s.iter().rev()),
            format!("{s:?}"),
        );
        rep.record(
            "ρ nondecreasing to the middle",
            (1..=s.len() / 2).all(|i| s[i - 1] <= s[i]),
            "",
        );
        rep.record(
            "displacement ≥ 0",
            self.displacement >= 0,
            self.displacement.to_string(),
        );
        rep
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim(),
            "r": self.endpoint,
            "t": self.dual_endpoint,
            "d": self.diameter,
            "delta": self.dual_diameter,
            "shape": self.shape,
            "displacement": self.displacement,
            "thin": self.thin,
            "irreducible": self.irreducible_certified,
        })
    }
}

/// `Π_{k<i} (λ - θ_{t+d-k})` for `0 ≤ i ≤ d`, low to high.
pub(crate) fn raising_polys(ctx: &BaseContext, t: usize, d: usize) -> Vec<Vec<i64>> {
    (0..=d)
        .map(|i| {
            let roots: Vec<i64> = (0..i).map(|k| ctx.theta(t + d - k)).collect();
            crate::spectral::poly_from_roots(&roots)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drg::{build_family, DualPolarKind, Family};
    use crate::ratlinalg::{rat, unit};

    fn ctx(f: Family) -> BaseContext {
        BaseContext::from_graph(build_family(&f).unwrap(), 0).unwrap()
    }

    #[test]
    fn primary_module() {
        let c = ctx(Family::DualPolar {
            kind: DualPolarKind::C,
            d: 2,
            q: 2,
        });
        let ones = vec![rat(1); 15];
        let w = t_closure(&c, &ones).unwrap();
        assert_eq!(w, t_closure(&c, &unit(15, 0)).unwrap());
        let m = module_profile(&c, &w).unwrap();
        assert_eq!(
            (m.endpoint, m.dual_endpoint, m.diameter, m.displacement),
            (0, 0, 2, 0)
        );
        assert_eq!(m.shape, vec![1, 1, 1]);
        assert!(m.thin && m.irreducible_certified);
        assert!(m.invariants().passed());
        assert!(t_closure(&c, &vec![rat(0); 15]).is_err());
    }

    #[test]
    fn square_neighbor_difference() {
        let c = ctx(Family::Hypercube { d: 2 });
        let nb = c.shell(1).to_vec();
        let mut v = vec![rat(0); 4];
        v[nb[0]] = rat(1);
        v[nb[1]] = rat(-1);
        let m = module_profile(&c, &t_closure(&c, &v).unwrap()).unwrap();
        assert_eq!(
            (m.dim(), m.endpoint, m.dual_endpoint, m.diameter),
            (1, 1, 1, 0)
        );
        assert!(m.irreducible_certified);
    }

    #[test]
    fn whole_space_is_profiled_not_certified() {
        let c = ctx(Family::Hypercube { d: 3 });
        let m = module_profile(&c, &Subspace::full(8)).unwrap();
        assert_eq!(m.shape, vec![1, 3, 3, 1]);
        assert!(!m.thin && !m.irreducible_certified);
        let line = Subspace::span(8, [unit(8, 1)]);
        assert!(matches!(
            module_profile(&c, &line),
            Err(Error::NotInvariant("A"))
        ));
    }
}
