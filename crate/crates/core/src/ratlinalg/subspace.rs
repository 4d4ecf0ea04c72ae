use num_traits::{One, Zero};

use super::matrix::{dot, rref, rref_rows, RatMatrix};
use super::Rational;
use crate::error::{Error, Result};

/// A subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// The basis is canonical, so two `Subspace`s compare equal exactly when they
/// describe the same space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) [", self.dim(), self.ambient_dim)?;
        for (k, row) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "({})", s.join(","))?;
        }
        write!(f, "]")
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Self {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors. Every vector must have length `ambient_dim`.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut rows: Vec<Vec<Rational>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient_dim, "vector length differs from ambient"))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let pivots = rref_rows(&mut rows, ambient_dim);
        Self {
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let basis = idx.iter().map(|&i| unit(ambient_dim, i)).collect();
        Self {
            ambient_dim,
            basis,
            pivots: idx,
        }
    }

    /// Row space of a matrix.
    pub fn row_space(m: &RatMatrix) -> Self {
        Self::span(m.cols(), m.row_vecs())
    }

    /// Column space of a matrix.
    pub fn column_space(m: &RatMatrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.ambient_dim, self.basis.clone())
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    /// Membership test. Uses the RREF pivots, so it costs one reduction pass.
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        // In RREF the coordinate along row k is the entry of v at pivot k.
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Rational::zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in recon.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x += c * b;
                }
            }
        }
        (recon == v).then_some(coords)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// Intersection by the Zassenhaus construction: reduce `[[u, u], [w, 0]]`
    /// and keep the right halves of rows whose left half vanishes.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(n));
        }
        let zeros = vec![Rational::zero(); n];
        let mut rows: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|u| u.iter().chain(u.iter()).cloned().collect())
            .chain(
                other
                    .basis
                    .iter()
                    .map(|w| w.iter().chain(zeros.iter()).cloned().collect()),
            )
            .collect();
        rref_rows(&mut rows, 2 * n);
        let meet = rows
            .into_iter()
            .filter(|r| r[..n].iter().all(Zero::is_zero))
            .map(|r| r[n..].to_vec());
        Ok(Self::span(n, meet))
    }

    /// Vectors of `self` orthogonal (standard dot product) to every vector of
    /// `other`. No containment is required.
    pub fn perp_within(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if other.is_zero() || self.is_zero() {
            return Ok(self.clone());
        }
        // c^T B_self is orthogonal to other iff G c = 0 with G_{jk} = <b_k, o_j>.
        let gram = RatMatrix::from_rows(
            self.dim(),
            other
                .basis
                .iter()
                .map(|o| self.basis.iter().map(|b| dot(b, o)).collect())
                .collect(),
        );
        let ker = kernel(&gram);
        let vecs = ker
            .basis
            .iter()
            .map(|c| combine(&self.basis, c, self.ambient_dim));
        Ok(Self::span(self.ambient_dim, vecs))
    }

    /// Orthogonal complement of `self` inside `within`. Requires containment.
    pub fn orth_complement(&self, within: &Self) -> Result<Self> {
        self.check_ambient(within)?;
        if !within.contains_subspace(self) {
            return Err(Error::NotContained);
        }
        within.perp_within(self)
    }

    /// Span of the images of the basis vectors under `f`.
    pub fn map<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&[Rational]) -> Vec<Rational>,
    {
        let images: Vec<Vec<Rational>> = self.basis.iter().map(|b| f(b)).collect();
        let n = images.first().map_or(self.ambient_dim, Vec::len);
        Self::span(n, images)
    }

    /// True when applying `f` to every basis vector stays inside the space.
    pub fn is_invariant<F>(&self, mut f: F) -> bool
    where
        F: FnMut(&[Rational]) -> Vec<Rational>,
    {
        self.basis.iter().all(|b| self.contains(&f(b)))
    }

    /// True iff every basis vector of `self` is orthogonal to every basis
    /// vector of `other`.
    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.basis
            .iter()
            .all(|u| other.basis.iter().all(|v| dot(u, v).is_zero()))
    }
}

/// Linear combination `sum_k c_k rows_k`.
pub(crate) fn combine(rows: &[Vec<Rational>], coeffs: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (x, b) in out.iter_mut().zip(row) {
            if !b.is_zero() {
                *x += c * b;
            }
        }
    }
    out
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Coordinates of `v` in an arbitrary (not necessarily echelon) list of
/// vectors; `None` if the list is dependent or `v` is outside its span.
pub fn coordinates_in(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    // Each row is (vector, tag, pivot) with vector = Σ tag_i basis_i.
    let mut rows: Vec<(Vec<Rational>, Vec<Rational>, usize)> = Vec::with_capacity(k);
    let reduce = |w: &mut Vec<Rational>,
                  tag: &mut Vec<Rational>,
                  rows: &[(Vec<Rational>, Vec<Rational>, usize)]| {
        for (row, rtag, p) in rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (a, b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in tag.iter_mut().zip(rtag) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
    };
    for (i, b) in basis.iter().enumerate() {
        let mut w = b.clone();
        let mut tag = unit(k, i);
        reduce(&mut w, &mut tag, &rows);
        let p = w.iter().position(|c| !c.is_zero())?;
        let inv = w[p].recip();
        w.iter_mut().for_each(|c| *c *= &inv);
        tag.iter_mut().for_each(|c| *c *= &inv);
        rows.push((w, tag, p));
    }
    let mut w = v.to_vec();
    let mut tag = vec![Rational::zero(); k];
    reduce(&mut w, &mut tag, &rows);
    w.iter()
        .all(Zero::is_zero)
        .then(|| tag.into_iter().map(|c| -c).collect())
}

/// Null space `{v : M v = 0}` as a canonical subspace of `Q^cols`.
pub fn kernel(m: &RatMatrix) -> Subspace {
    let cols = m.cols();
    let r = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let vecs = (0..cols).filter(|&c| !is_pivot[c]).map(|free| {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (k, &p) in r.pivots.iter().enumerate() {
            let e = r.matrix.get(k, free);
            if !e.is_zero() {
                v[p] = -e.clone();
            }
        }
        v
    });
    Subspace::span(cols, vecs.collect::<Vec<_>>())
}

pub fn intersect(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.intersect(w)
}

pub fn sum(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.sum(w)
}

pub fn orth_complement(u: &Subspace, w: &Subspace) -> Result<Subspace> {
    u.orth_complement(w)
}

/// True iff the sum of the given spaces is direct.
pub fn is_direct(spaces: &[Subspace]) -> Result<bool> {
    let Some(first) = spaces.first() else {
        return Ok(true);
    };
    let n = first.ambient_dim();
    if let Some(bad) = spaces.iter().find(|s| s.ambient_dim() != n) {
        return Err(Error::AmbientMismatch(n, bad.ambient_dim()));
    }
    let total: usize = spaces.iter().map(Subspace::dim).sum();
    let joined = Subspace::span(n, spaces.iter().flat_map(|s| s.basis().iter().cloned()));
    Ok(joined.dim() == total)
}

/// Sum of a list of spaces in a common ambient space.
pub fn sum_all(ambient_dim: usize, spaces: &[Subspace]) -> Subspace {
    Subspace::span(
        ambient_dim,
        spaces.iter().flat_map(|s| s.basis().iter().cloned()),
    )
}

/// `ker(M - theta I)`; zero when `theta` is not an eigenvalue.
pub fn eigenspace(m: &RatMatrix, theta: &Rational) -> Subspace {
    assert!(m.is_square(), "eigenspace needs a square matrix");
    kernel(&m.shift(theta))
}
