//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Everything downstream (idempotents, eigenspaces, the nucleus and its
//! modules) is built on [`RatMatrix`] and the canonical [`Subspace`].

mod intmat;
mod matrix;
mod modp;
mod subspace;

use num_bigint::BigInt;

pub use intmat::{IntMatrix, SparseIntMatrix};
pub use matrix::{dot, rref, RatMatrix, Rref};
pub use modp::{independent_rows, int_kernel};
pub(crate) use subspace::combine;
pub use subspace::{
    coordinates_in, eigenspace, intersect, is_direct, kernel, orth_complement, sum, sum_all, unit,
    Subspace,
};

pub type Rational = num_rational::BigRational;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ratv(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

/// `"num/den"`, or just `"num"` for integers.
pub fn rat_to_string(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (d != BigInt::from(0)).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Row-major JSON rendering of a matrix as strings.
pub fn matrix_to_json(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(rat_to_string).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<String>]) -> Option<RatMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    let parsed = rows
        .iter()
        .map(|r| {
            (r.len() == cols).then(|| r.iter().map(|s| parse_rat(s)).collect::<Option<Vec<_>>>())?
        })
        .collect::<Option<Vec<_>>>()?;
    Some(RatMatrix::from_rows(cols, parsed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat(3)), "3");
        assert_eq!(rat_to_string(&frac(-9, 4)), "-9/4");
        assert_eq!(rat_to_string(&frac(6, -8)), "-3/4");
        assert_eq!(parse_rat("-9/4"), Some(frac(-9, 4)));
        assert_eq!(parse_rat("\u{2212}9/4"), Some(frac(-9, 4)));
        assert_eq!(parse_rat("1/0"), None);
        let m = RatMatrix::from_rows(2, vec![vec![frac(1, 2), rat(0)], vec![rat(-3), frac(7, 3)]]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)), Some(m));
    }
}
