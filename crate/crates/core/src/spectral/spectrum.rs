use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratlinalg::{IntMatrix, Rational, SparseIntMatrix};

/// Distinct eigenvalues (descending) and their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<i64>,
    pub multiplicities: Vec<usize>,
}

/// Monic integer polynomial, coefficients low to high.
pub(crate) type Poly = Vec<BigInt>;

/// Minimal polynomial of `e_x` under `a`: the first linear relation among
/// `e_x, A e_x, A^2 e_x, ...`.
fn local_min_poly(a: &SparseIntMatrix, x: usize) -> Poly {
    let n = a.size();
    // Each stored row is (reduced vector, tag) where tag records which
    // combination of Krylov vectors it is.
    let mut reduced: Vec<(Vec<Rational>, Vec<Rational>, usize)> = Vec::new();
    let mut v: Vec<Rational> = (0..n)
        .map(|i| {
            if i == x {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    for m in 0..=n {
        let mut w = v.clone();
        let mut tag = vec![Rational::zero(); m + 1];
        tag[m] = Rational::one();
        for (row, rtag, p) in &reduced {
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
                *a -= &f * b;
            }
        }
        match w.iter().position(|c| !c.is_zero()) {
            None => {
                // tag · (v_0..v_m) = 0 with tag[m] = 1.
                return tag.iter().map(|c| c.to_integer()).collect();
            }
            Some(p) => {
                let inv = w[p].recip();
                for c in w.iter_mut() {
                    *c *= &inv;
                }
                for c in tag.iter_mut() {
                    *c *= &inv;
                }
                reduced.push((w, tag, p));
            }
        }
        v = a.mul_rat(&v);
    }
    unreachable!("Krylov sequence must become dependent within n steps")
}

fn eval(p: &Poly, x: i64) -> BigInt {
    let x = BigInt::from(x);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn poly_mul_linear(p: &Poly, root: i64) -> Poly {
    // p(λ)(λ - root)
    let mut out = vec![BigInt::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k + 1] += c;
        out[k] -= c * BigInt::from(root);
    }
    out
}

/// `Π (λ - r)` over `roots`, as integer coefficients low to high.
pub(crate) fn poly_from_roots(roots: &[i64]) -> Vec<i64> {
    let mut p: Poly = vec![BigInt::one()];
    for &r in roots {
        p = poly_mul_linear(&p, r);
    }
    p.iter()
        .map(|c| i64::try_from(c).expect("polynomial coefficient fits in i64"))
        .collect()
}

/// Integer roots of `p` in `[-bound, bound]`.
fn integer_roots(p: &Poly, bound: i64) -> Vec<i64> {
    (-bound..=bound).filter(|&t| eval(p, t).is_zero()).collect()
}

/// `p(A) v` for integer `v`, by Horner's rule; `None` on `i128` overflow.
pub(crate) fn poly_apply_i128(
    a: &SparseIntMatrix,
    coeffs: &[i64],
    v: &[i128],
) -> Option<Vec<i128>> {
    let mut acc = vec![0i128; v.len()];
    for &c in coeffs.iter().rev() {
        let mut next = a.mul_i128(&acc)?;
        for (x, &y) in next.iter_mut().zip(v) {
            *x = x.checked_add((c as i128).checked_mul(y)?)?;
        }
        acc = next;
    }
    Some(acc)
}

/// Distinct eigenvalues and multiplicities of a symmetric integer matrix
/// whose minimal polynomial splits over the integers.
///
/// The minimal polynomial is the lcm of the local minimal polynomials of
/// the standard basis vectors; it is found at one vertex and then checked to
/// annihilate every other basis vector, refining where it does not.
/// Multiplicities are traces of the Lagrange idempotents.
pub fn integer_spectrum(a: &IntMatrix) -> Result<Spectrum> {
    let n = a.size();
    if n == 0 {
        return Err(Error::Input("empty matrix".into()));
    }
    if !a.is_symmetric() {
        return Err(Error::Input("matrix is not symmetric".into()));
    }
    let sparse = a.to_sparse();
    let bound = (0..n)
        .map(|i| a.row(i).iter().map(|x| x.abs()).sum::<i64>())
        .max()
        .unwrap_or(0);

    let mut roots: Vec<i64> = Vec::new();
    let add_roots = |p: &Poly, roots: &mut Vec<i64>| -> Result<()> {
        let found = integer_roots(p, bound);
        if found.len() + 1 != p.len() {
            return Err(Error::NonIntegerSpectrum);
        }
        for r in found {
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        Ok(())
    };
    add_roots(&local_min_poly(&sparse, 0), &mut roots)?;
    for x in 1..n {
        let coeffs = poly_from_roots(&roots);
        let mut e = vec![0i128; n];
        e[x] = 1;
        let annihilated =
            poly_apply_i128(&sparse, &coeffs, &e).is_some_and(|w| w.iter().all(|&c| c == 0));
        if !annihilated {
            add_roots(&local_min_poly(&sparse, x), &mut roots)?;
        }
    }
    roots.sort_unstable_by(|a, b| b.cmp(a));

    let multiplicities = multiplicities(&sparse, &roots)?;
    Ok(Spectrum {
        eigenvalues: roots,
        multiplicities,
    })
}

/// `m_i = trace E_i = Σ_x p_i(A)_{xx} / p_i(θ_i)`.
fn multiplicities(a: &SparseIntMatrix, roots: &[i64]) -> Result<Vec<usize>> {
    let n = a.size();
    let s = roots.len();
    // diag[k] = trace(A^k) for k < s.
    let mut traces = vec![0i128; s];
    for x in 0..n {
        let mut v = vec![0i128; n];
        v[x] = 1;
        for t in traces.iter_mut() {
            *t += v[x];
            v = a
                .mul_i128(&v)
                .ok_or_else(|| Error::Unsupported("walk counts overflow".into()))?;
        }
    }
    roots
        .iter()
        .enumerate()
        .map(|(i, &ti)| {
            let others: Vec<i64> = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &t)| t)
                .collect();
            let coeffs = poly_from_roots(&others);
            let num: i128 = coeffs
                .iter()
                .zip(&traces)
                .map(|(&c, &t)| c as i128 * t)
                .sum();
            let den: i128 = others.iter().map(|&t| (ti - t) as i128).product();
            if num % den != 0 || (num / den) <= 0 {
                return Err(Error::Certification(format!(
                    "trace of idempotent for {ti} is {num}/{den}"
                )));
            }
            Ok((num / den) as usize)
        })
        .collect()
}
