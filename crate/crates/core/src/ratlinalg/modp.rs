use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{kernel, RatMatrix, Rational, Subspace};

/// The Mersenne prime `2^61 - 1`.
const P: u64 = (1 << 61) - 1;

fn reduce(x: u128) -> u64 {
    let r = (x as u64 & P) + (x >> 61) as u64;
    let r = if r >= P { r - P } else { r };
    if r >= P {
        r - P
    } else {
        r
    }
}

fn mul(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

fn inv(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

fn to_mod(x: i64) -> u64 {
    x.rem_euclid(P as i64) as u64
}

/// Smallest-height fraction congruent to `a` modulo `P`, with numerator and
/// denominator both below `sqrt(P/2)`.
fn reconstruct(a: u64) -> Option<Rational> {
    let bound: i128 = 1 << 30;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= bound {
        return None;
    }
    Some(Rational::new(BigInt::from(r1), BigInt::from(t1)))
}

/// `{v : M v = 0}` for an integer matrix given by rows.
///
/// The kernel is computed modulo a large prime and lifted by rational
/// reconstruction. The lift is accepted only after every lifted vector is
/// checked against every row exactly; since the rational rank is at least
/// the modular rank, that many independent exact solutions span the kernel.
/// Otherwise the rational kernel is computed directly.
pub fn int_kernel(rows: &[Vec<i64>], ncols: usize) -> Subspace {
    lifted_kernel(rows, ncols).unwrap_or_else(|| {
        kernel(&RatMatrix::from_rows(
            ncols,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        ))
    })
}

fn lifted_kernel(rows: &[Vec<i64>], ncols: usize) -> Option<Subspace> {
    // Echelon basis, each row normalized to 1 at its pivot.
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for row in rows {
        if basis.len() == ncols {
            break;
        }
        let mut v: Vec<u64> = row.iter().map(|&x| to_mod(x)).collect();
        for (p, b) in &basis {
            let f = v[*p];
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = reduce(*x as u128 + (P - mul(f, y)) as u128);
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let s = inv(v[p]);
            v.iter_mut().for_each(|x| *x = mul(*x, s));
            basis.push((p, v));
        }
    }
    // Back-substitute to reduced form, last pivot first.
    basis.sort_by_key(|(p, _)| *p);
    for k in (0..basis.len()).rev() {
        let (pk, rk) = (basis[k].0, basis[k].1.clone());
        for (_, row) in basis[..k].iter_mut() {
            let f = row[pk];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&rk) {
                if y != 0 {
                    *x = reduce(*x as u128 + (P - mul(f, y)) as u128);
                }
            }
        }
    }
    let mut is_pivot = vec![false; ncols];
    for (p, _) in &basis {
        is_pivot[*p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (p, row) in &basis {
            if row[free] != 0 {
                v[*p] = -reconstruct(row[free])?;
            }
        }
        vectors.push(v);
    }
    for v in &vectors {
        let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<(usize, i128)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (c.numer() * (&den / c.denom())).to_i128().map(|x| (j, x)))
            .collect::<Option<_>>()?;
        for row in rows {
            let mut s: i128 = 0;
            for &(j, x) in &ints {
                s = s.checked_add(x.checked_mul(row[j] as i128)?)?;
            }
            if s != 0 {
                return None;
            }
        }
    }
    Some(Subspace::span(ncols, vectors))
}

/// Indices of a maximal prefix-greedy set of rows that are independent
/// modulo a prime (hence over the rationals), stopping after `limit`.
pub fn independent_rows<I>(rows: I, limit: usize) -> Vec<usize>
where
    I: IntoIterator<Item = Vec<i64>>,
{
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in rows.into_iter().enumerate() {
        if picked.len() == limit {
            break;
        }
        let mut v: Vec<u64> = row.iter().map(|&x| to_mod(x)).collect();
        for (p, b) in &basis {
            let f = v[*p];
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = reduce(*x as u128 + (P - mul(f, y)) as u128);
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let s = inv(v[p]);
            v.iter_mut().for_each(|x| *x = mul(*x, s));
            basis.push((p, v));
            picked.push(idx);
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::{frac, ratv};

    #[test]
    fn reconstruction() {
        for (n, d) in [(3, 7), (-9, 4), (0, 1), (123456, 789)] {
            let a = mul(to_mod(n), inv(to_mod(d)));
            assert_eq!(reconstruct(a), Some(frac(n, d)));
        }
    }

    #[test]
    fn kernel_matches_rational() {
        let rows = vec![vec![1, 1, 1], vec![2, -1, 4]];
        let expect = kernel(&RatMatrix::from_i64_rows(&rows));
        assert_eq!(int_kernel(&rows, 3), expect);
        assert_eq!(
            int_kernel(&[vec![1, 1, 1]], 3),
            Subspace::span(3, [ratv(&[1, 0, -1]), ratv(&[0, 1, -1])])
        );
        assert!(int_kernel(&[vec![1, 0], vec![0, 3]], 2).is_zero());
        assert_eq!(int_kernel(&[], 2).dim(), 2);
    }

    #[test]
    fn row_selection() {
        let rows = vec![vec![1, 2], vec![2, 4], vec![0, 1], vec![5, 5]];
        assert_eq!(independent_rows(rows.clone(), 9), vec![0, 2]);
        assert_eq!(independent_rows(rows, 1), vec![0]);
    }
}
