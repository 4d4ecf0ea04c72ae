use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ffsubspace::{projective_points, FFSubspace};
use super::field::{FFElement, FieldSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormKind {
    /// `B(x,y) = Σ (x_{2i} y_{2i+1} - x_{2i+1} y_{2i})` (0-indexed pairs).
    Symplectic,
    /// `Q(x) = x_0^2 + Σ x_{2i-1} x_{2i}` on odd dimension.
    QuadraticParabolic,
    /// `Q(x) = Σ x_{2i} x_{2i+1}` (0-indexed pairs) on even dimension.
    QuadraticHyperbolic,
    /// `B(x,y) = Σ x_i conj(y_i)` over GF(r^2).
    Hermitean,
}

/// A nondegenerate form in one of the standard coordinate presentations.
#[derive(Clone, Debug, PartialEq)]
pub struct FormSpec {
    kind: FormKind,
    ambient_dim: usize,
    field: FieldSpec,
}

impl FormSpec {
    pub fn new(kind: FormKind, ambient_dim: usize, field: FieldSpec) -> Result<Self> {
        let ok = match kind {
            FormKind::Symplectic | FormKind::QuadraticHyperbolic => ambient_dim.is_multiple_of(2),
            FormKind::QuadraticParabolic => ambient_dim % 2 == 1,
            FormKind::Hermitean => field.half_order().is_some(),
        };
        if !ok || ambient_dim == 0 {
            return Err(Error::Unsupported(format!(
                "{kind:?} form on dimension {ambient_dim} over GF({})",
                field.q()
            )));
        }
        Ok(Self {
            kind,
            ambient_dim,
            field,
        })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(
            self.kind,
            FormKind::QuadraticParabolic | FormKind::QuadraticHyperbolic
        )
    }

    /// Witt index: the dimension of a maximal totally isotropic subspace.
    pub fn witt_index(&self) -> usize {
        self.ambient_dim / 2
    }

    fn check(&self, v: &[FFElement]) -> Result<()> {
        if v.len() == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            })
        }
    }

    /// Quadratic value `Q(u)`; only meaningful for the quadratic kinds.
    pub fn quadratic(&self, u: &[FFElement]) -> Result<FFElement> {
        self.check(u)?;
        let f = &self.field;
        let pairs = |start: usize| {
            (start..self.ambient_dim)
                .step_by(2)
                .fold(0, |acc, i| f.add(acc, f.mul(u[i], u[i + 1])))
        };
        match self.kind {
            FormKind::QuadraticHyperbolic => Ok(pairs(0)),
            FormKind::QuadraticParabolic => Ok(f.add(f.mul(u[0], u[0]), pairs(1))),
            _ => Err(Error::Unsupported(format!(
                "{:?} form has no quadratic value",
                self.kind
            ))),
        }
    }

    /// Bilinear (or sesquilinear) value `B(u, v)`. For quadratic kinds this
    /// is the polarisation `Q(u+v) - Q(u) - Q(v)`.
    pub fn bilinear(&self, u: &[FFElement], v: &[FFElement]) -> Result<FFElement> {
        self.check(u)?;
        self.check(v)?;
        let f = &self.field;
        match self.kind {
            FormKind::Symplectic => Ok((0..self.ambient_dim).step_by(2).fold(0, |acc, i| {
                f.add(acc, f.sub(f.mul(u[i], v[i + 1]), f.mul(u[i + 1], v[i])))
            })),
            FormKind::Hermitean => {
                let mut acc = 0;
                for (&a, &b) in u.iter().zip(v) {
                    acc = f.add(acc, f.mul(a, f.conj(b)?));
                }
                Ok(acc)
            }
            _ => {
                let w: Vec<_> = u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect();
                Ok(f.sub(
                    f.sub(self.quadratic(&w)?, self.quadratic(u)?),
                    self.quadratic(v)?,
                ))
            }
        }
    }

    /// The value a point must have to be singular: `Q(u)` for quadratic
    /// kinds, `B(u,u)` otherwise.
    fn self_value(&self, u: &[FFElement]) -> Result<FFElement> {
        if self.is_quadratic() {
            self.quadratic(u)
        } else {
            self.bilinear(u, u)
        }
    }

    /// True iff the form (and `Q`, for quadratic kinds) vanishes on `s`.
    pub fn is_totally_isotropic(&self, s: &FFSubspace) -> Result<bool> {
        if s.ambient_dim() != self.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, s.ambient_dim()));
        }
        let basis = s.basis();
        for (i, u) in basis.iter().enumerate() {
            if self.self_value(u)? != 0 {
                return Ok(false);
            }
            for v in &basis[i + 1..] {
                if self.bilinear(u, v)? != 0 {
                    return Ok(false);
                }
            }
        }
        // Q vanishing on a basis with B vanishing pairwise already forces Q = 0;
        // small subspaces are also checked vector by vector as a safeguard.
        if self.is_quadratic() && s.dim() <= 3 {
            for v in s.vectors(&self.field) {
                if self.quadratic(&v)? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `form_value(form, u, Some(v))` is `B(u,v)`; `form_value(form, u, None)`
/// is `Q(u)` for quadratic forms and `B(u,u)` otherwise.
pub fn form_value(form: &FormSpec, u: &[FFElement], v: Option<&[FFElement]>) -> Result<FFElement> {
    match v {
        Some(v) => form.bilinear(u, v),
        None => form.self_value(u),
    }
}

/// All totally isotropic `d`-subspaces, canonically ordered.
///
/// Grows isotropic subspaces one singular point at a time; a point `p`
/// extends `S` iff `p ∉ S`, `p` is singular and `B(p, S) = 0`.
pub fn max_isotropic_enumerate(form: &FormSpec, d: usize) -> Result<Vec<FFSubspace>> {
    let f = form.field();
    let n = form.ambient_dim();
    let mut singular = Vec::new();
    for p in projective_points(f, n) {
        if form.self_value(&p)? == 0 {
            singular.push(p);
        }
    }
    let mut level: BTreeSet<FFSubspace> = BTreeSet::from([FFSubspace::zero(n)]);
    for _ in 0..d {
        let mut next = BTreeSet::new();
        for s in &level {
            for p in &singular {
                if s.contains(f, p) {
                    continue;
                }
                let mut ok = true;
                for b in s.basis() {
                    if form.bilinear(p, b)? != 0 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    next.insert(s.sum(f, &FFSubspace::span(f, n, [p.clone()])));
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}
