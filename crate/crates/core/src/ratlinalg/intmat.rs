use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::{RatMatrix, Rational};

/// Dense integer matrix for Bose-Mesner arithmetic.
///
/// Adjacency polynomials of the graphs handled here have small integer
/// entries; every operation is checked and panics on `i64` overflow rather
/// than wrapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `self - c I`.
    pub fn shift(&self, c: i64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let d = &mut m.data[i * self.n + i];
            *d = d.checked_sub(c).expect("integer overflow in shift");
        }
        m
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|&x| x.checked_mul(c).expect("integer overflow in scale"))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a.checked_add(b).expect("integer overflow in add"))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0i64; n * n];
        data.par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(i, out)| {
                let mut acc = vec![0i128; n];
                for k in 0..n {
                    let a = self.data[i * n + k];
                    if a == 0 {
                        continue;
                    }
                    let brow = &other.data[k * n..(k + 1) * n];
                    for (s, &b) in acc.iter_mut().zip(brow) {
                        *s += a as i128 * b as i128;
                    }
                }
                for (o, s) in out.iter_mut().zip(acc) {
                    *o = i64::try_from(s).expect("integer overflow in product");
                }
            });
        Self { n, data }
    }

    pub fn to_rat(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let x = self.get(i, j);
                if x != 0 {
                    m.set(i, j, Rational::from_integer(BigInt::from(x)));
                }
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_sparse(&self) -> SparseIntMatrix {
        SparseIntMatrix {
            rows: (0..self.n)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(j, &x)| (j, x))
                        .collect()
                })
                .collect(),
        }
    }

    /// Rank modulo the prime `p` (`p < 2^31`). A full rank modulo `p`
    /// certifies full rank over the rationals.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let n = self.n;
        let pi = p as i64;
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&x| x.rem_euclid(pi) as u64)
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for c in 0..n {
            let Some(piv) = (rank..n).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = pow_mod(rows[rank][c], p - 2, p);
            for x in rows[rank].iter_mut() {
                *x = *x * inv % p;
            }
            let prow = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == rank || row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for (x, &b) in row.iter_mut().zip(&prow) {
                    *x = (*x + p - f * b % p) % p;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact rank: modular rank when it is full, otherwise rational RREF.
    pub fn rank(&self) -> usize {
        let r = self.rank_mod_p(2_147_483_647);
        if r == self.n {
            r
        } else {
            self.to_rat().rank()
        }
    }
}

/// Row-compressed integer matrix for repeated matrix-vector products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn from_rows(rows: Vec<Vec<(usize, i64)>>) -> Self {
        Self { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    /// `Mv` over `i128`; `None` on overflow.
    pub fn mul_i128(&self, v: &[i128]) -> Option<Vec<i128>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter().try_fold(0i128, |acc, &(j, a)| {
                    acc.checked_add((a as i128).checked_mul(v[j])?)
                })
            })
            .collect()
    }

    pub fn mul_rat(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|r| {
                let mut acc = Rational::zero();
                for &(j, a) in r {
                    if !v[j].is_zero() {
                        if a == 1 {
                            acc += &v[j];
                        } else {
                            acc += &v[j] * Rational::from_integer(BigInt::from(a));
                        }
                    }
                }
                acc
            })
            .collect()
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_rational() {
        let a = IntMatrix::from_fn(4, |i, j| ((i * 3 + j * 5) % 7) as i64 - 3);
        let b = IntMatrix::from_fn(4, |i, j| ((i + 2 * j) % 5) as i64 - 2);
        assert_eq!(a.mul(&b).to_rat(), &a.to_rat() * &b.to_rat());
    }

    #[test]
    fn ranks() {
        assert_eq!(IntMatrix::identity(5).rank(), 5);
        let singular = IntMatrix::from_fn(3, |i, j| (i + j) as i64);
        assert_eq!(singular.rank(), 2);
        assert_eq!(singular.to_rat().rank(), 2);
    }
}
