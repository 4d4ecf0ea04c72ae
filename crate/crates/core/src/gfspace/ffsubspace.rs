use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::field::{FFElement, FieldSpec};
use crate::error::{Error, Result};

/// A subspace of GF(q)^n held as its reduced row-echelon basis.
///
/// Ordering and equality are on `(ambient_dim, basis)`, which is the
/// canonical label encoding used for vertex ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FFSubspace {
    ambient_dim: usize,
    basis: Vec<Vec<FFElement>>,
}

impl PartialOrd for FFSubspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FFSubspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim, &self.basis).cmp(&(other.ambient_dim, &other.basis))
    }
}

/// Gauss-Jordan over GF(q); removes zero rows, returns pivots.
pub(crate) fn rref_ff(f: &FieldSpec, rows: &mut Vec<Vec<FFElement>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let fac = row[c];
            for (x, &b) in row.iter_mut().zip(&prow) {
                if b != 0 {
                    *x = f.sub(*x, f.mul(fac, b));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl FFSubspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| u32::from(i == j)).collect())
            .collect();
        Self { ambient_dim, basis }
    }

    /// Span of `vectors`, canonicalised.
    pub fn span(
        f: &FieldSpec,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = Vec<FFElement>>,
    ) -> Self {
        let mut rows: Vec<Vec<FFElement>> = vectors
            .into_iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        rref_ff(f, &mut rows, ambient_dim);
        Self {
            ambient_dim,
            basis: rows,
        }
    }

    /// Builds from already-canonical rows (used when deserialising labels).
    pub fn from_canonical_rows(
        f: &FieldSpec,
        ambient_dim: usize,
        rows: Vec<Vec<FFElement>>,
    ) -> Result<Self> {
        let s = subspace_canonical(f, ambient_dim, &rows)?;
        if s.basis != rows {
            return Err(Error::Input(
                "subspace rows are not in canonical form".into(),
            ));
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FFElement>] {
        &self.basis
    }

    pub fn sum(&self, f: &FieldSpec, other: &Self) -> Self {
        Self::span(
            f,
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn contains(&self, f: &FieldSpec, v: &[FFElement]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref_ff(f, &mut rows, self.ambient_dim);
        rows.len() == self.basis.len()
    }

    pub fn contains_subspace(&self, f: &FieldSpec, other: &Self) -> bool {
        self.sum(f, other).dim() == self.dim()
    }

    /// `dim(self ∩ other)` by the dimension formula.
    pub fn meet_dim(&self, f: &FieldSpec, other: &Self) -> usize {
        self.dim() + other.dim() - self.sum(f, other).dim()
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersect(&self, f: &FieldSpec, other: &Self) -> Self {
        let n = self.ambient_dim;
        let zeros = vec![0; n];
        let mut rows: Vec<Vec<FFElement>> = self
            .basis
            .iter()
            .map(|u| u.iter().chain(u.iter()).copied().collect())
            .chain(
                other
                    .basis
                    .iter()
                    .map(|w| w.iter().chain(&zeros).copied().collect()),
            )
            .collect();
        rref_ff(f, &mut rows, 2 * n);
        let meet = rows
            .into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec());
        Self::span(f, n, meet)
    }

    /// Every vector of the subspace (q^dim of them), in coefficient order.
    pub fn vectors(&self, f: &FieldSpec) -> Vec<Vec<FFElement>> {
        let k = self.dim();
        let total = (f.q() as u64).pow(k as u32);
        (0..total)
            .map(|mut code| {
                let mut v = vec![0; self.ambient_dim];
                for row in &self.basis {
                    let c = (code % f.q() as u64) as u32;
                    code /= f.q() as u64;
                    if c != 0 {
                        for (x, &b) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(c, b));
                        }
                    }
                }
                v
            })
            .collect()
    }
}

/// Canonical span of a list of vectors; fails when a vector has the wrong
/// length or an out-of-field entry.
pub fn subspace_canonical(
    f: &FieldSpec,
    ambient_dim: usize,
    vectors: &[Vec<FFElement>],
) -> Result<FFSubspace> {
    for v in vectors {
        if v.len() != ambient_dim {
            return Err(Error::AmbientMismatch(ambient_dim, v.len()));
        }
        if v.iter().any(|&x| x >= f.q()) {
            return Err(Error::Input(format!(
                "entry out of range for GF({})",
                f.q()
            )));
        }
    }
    Ok(FFSubspace::span(f, ambient_dim, vectors.iter().cloned()))
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// All `k`-dimensional subspaces of `ambient`, each once, sorted canonically.
///
/// Works in coordinates relative to the ambient basis: every k-subspace of
/// GF(q)^m has a unique RREF generator matrix, enumerated by pivot set and
/// free entries.
pub fn enumerate_subspaces(
    f: &FieldSpec,
    ambient: &FFSubspace,
    k: usize,
) -> Result<Vec<FFSubspace>> {
    let m = ambient.dim();
    if k > m {
        return Err(Error::DimensionOutOfRange { k, dim: m });
    }
    let q = f.q() as u64;
    let mut out = Vec::new();
    for pivots in combinations(m, k) {
        // Free slots: in row r, columns after pivot r that are not pivots.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                ((pivots[r] + 1)..m)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for mut code in 0..total {
            let mut coords = vec![vec![0u32; m]; k];
            for (r, &p) in pivots.iter().enumerate() {
                coords[r][p] = 1;
            }
            for &(r, c) in &free {
                coords[r][c] = (code % q) as u32;
                code /= q;
            }
            let vecs = coords.into_iter().map(|c| {
                let mut v = vec![0; ambient.ambient_dim()];
                for (coef, row) in c.iter().zip(ambient.basis()) {
                    if *coef != 0 {
                        for (x, &b) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(*coef, b));
                        }
                    }
                }
                v
            });
            out.push(FFSubspace::span(
                f,
                ambient.ambient_dim(),
                vecs.collect::<Vec<_>>(),
            ));
        }
    }
    out.sort();
    Ok(out)
}

/// Projective points of GF(q)^n: nonzero vectors whose first nonzero entry
/// is 1, in lexicographic order.
pub fn projective_points(f: &FieldSpec, n: usize) -> Vec<Vec<FFElement>> {
    let q = f.q() as u64;
    let mut pts = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        for mut code in 0..q.pow(tail as u32) {
            let mut v = vec![0; n];
            v[lead] = 1;
            for x in v[lead + 1..].iter_mut().rev() {
                *x = (code % q) as u32;
                code /= q;
            }
            pts.push(v);
        }
    }
    pts.sort();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbinom::gaussian_binomial;

    #[test]
    fn canonical_examples() {
        let f = FieldSpec::new(2, 1).unwrap();
        let s = subspace_canonical(&f, 2, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(s.basis(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(subspace_canonical(&f, 3, &[]).unwrap().dim(), 0);
        let s = subspace_canonical(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(matches!(
            subspace_canonical(&f, 3, &[vec![1, 0]]),
            Err(Error::AmbientMismatch(3, 2))
        ));
    }

    #[test]
    fn enumeration_counts() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(
            enumerate_subspaces(&f, &FFSubspace::full(3), 0)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_subspaces(&f, &FFSubspace::full(3), 1)
                .unwrap()
                .len(),
            7
        );
        assert_eq!(
            enumerate_subspaces(&f, &FFSubspace::full(4), 2)
                .unwrap()
                .len(),
            35
        );
        assert!(enumerate_subspaces(&f, &FFSubspace::full(2), 3).is_err());
    }

    #[test]
    fn brute_force_two_subspaces_of_gf2_4() {
        // Oracle: span every pair of vectors and deduplicate.
        let f = FieldSpec::new(2, 1).unwrap();
        let all = FFSubspace::full(4).vectors(&f);
        let mut seen = std::collections::BTreeSet::new();
        for u in &all {
            for v in &all {
                let s = FFSubspace::span(&f, 4, [u.clone(), v.clone()]);
                if s.dim() == 2 {
                    seen.insert(s);
                }
            }
        }
        let listed: std::collections::BTreeSet<_> =
            enumerate_subspaces(&f, &FFSubspace::full(4), 2)
                .unwrap()
                .into_iter()
                .collect();
        assert_eq!(seen, listed);
        assert_eq!(seen.len() as u64, gaussian_binomial(4, 2, 2));
    }

    #[test]
    fn subspaces_of_a_proper_subspace() {
        let f = FieldSpec::new(3, 1).unwrap();
        let amb = FFSubspace::span(&f, 4, [vec![1, 0, 2, 0], vec![0, 1, 1, 1]]);
        let lines = enumerate_subspaces(&f, &amb, 1).unwrap();
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|l| amb.contains_subspace(&f, l)));
    }

    #[test]
    fn intersection_agrees_with_dimension_formula() {
        let f = FieldSpec::new(2, 2).unwrap();
        let a = FFSubspace::span(&f, 4, [vec![1, 0, 0, 0], vec![0, 1, 2, 0]]);
        let b = FFSubspace::span(&f, 4, [vec![1, 1, 2, 0], vec![0, 0, 0, 1]]);
        let m = a.intersect(&f, &b);
        assert_eq!(m.dim(), a.meet_dim(&f, &b));
        assert!(a.contains_subspace(&f, &m) && b.contains_subspace(&f, &m));
    }

    #[test]
    fn point_count() {
        let f = FieldSpec::new(3, 1).unwrap();
        assert_eq!(projective_points(&f, 3).len(), 13);
    }
}
