use super::{raising_polys, TModuleData};
use crate::error::{Error, Result};
use crate::ratlinalg::{combine, coordinates_in, Rational};
use crate::spectral::BaseContext;

/// A T-module isomorphism `W → W'` given on the basis `f_i(A) v`, where
/// `v`, `v'` span `E*_r W`, `E*_r W'`.
#[derive(Clone, Debug)]
pub struct ModuleIsomorphism {
    pub source: Vec<Vec<Rational>>,
    pub target: Vec<Vec<Rational>>,
}

impl ModuleIsomorphism {
    /// Image of a vector of `W`; `None` outside `W`.
    pub fn apply(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c = coordinates_in(&self.source, v)?;
        Some(combine(&self.target, &c, v.len()))
    }
}

/// Builds `σ : f_i(A) v ↦ f_i(A) v'` and certifies `σA = Aσ`, `σA* = A*σ`.
pub fn module_isomorphism(
    ctx: &BaseContext,
    w: &TModuleData,
    w2: &TModuleData,
) -> Result<ModuleIsomorphism> {
    for m in [w, w2] {
        if !m.irreducible_certified || !m.thin {
            return Err(Error::Precondition(
                "modules must be certified thin irreducibles".into(),
            ));
        }
    }
    if w.endpoint != w2.endpoint {
        return Err(Error::Precondition(format!(
            "endpoints differ: {} and {}",
            w.endpoint, w2.endpoint
        )));
    }
    if (w.dual_endpoint, w.diameter) != (w2.dual_endpoint, w2.diameter) {
        return Err(Error::Precondition(
            "modules have different dual endpoint or diameter".into(),
        ));
    }
    let (r, t, d) = (w.endpoint, w.dual_endpoint, w.diameter);
    let polys = raising_polys(ctx, t, d);
    let basis = |m: &TModuleData| -> Vec<Vec<Rational>> {
        let v = &m.estar[r].basis()[0];
        polys.iter().map(|p| ctx.apply_poly(p, v)).collect()
    };
    let iso = ModuleIsomorphism {
        source: basis(w),
        target: basis(w2),
    };
    let n = ctx.order();
    for (name, op) in [
        (
            "A",
            &(|x: &[Rational]| ctx.apply_a(x)) as &dyn Fn(&[Rational]) -> Vec<Rational>,
        ),
        ("A*", &|x: &[Rational]| ctx.apply_astar(x)),
    ] {
        for (s, t) in iso.source.iter().zip(&iso.target) {
            let coords = coordinates_in(&iso.source, &op(s)).ok_or_else(|| {
                Error::Certification(format!("{name} f_i(A)v leaves the span of the f_i(A)v"))
            })?;
            if combine(&iso.target, &coords, n) != op(t) {
                return Err(Error::Certification(format!(
                    "σ does not commute with {name}"
                )));
            }
        }
    }
    if coordinates_in(&iso.target, &iso.target[0]).is_none() {
        return Err(Error::Certification("image vectors are dependent".into()));
    }
    Ok(iso)
}
