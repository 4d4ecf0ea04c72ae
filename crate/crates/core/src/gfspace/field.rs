use crate::error::{Error, Result};

/// An element of GF(p^n) in polynomial-residue encoding: the element
/// `sum c_i w^i` is stored as the integer `sum c_i p^i`.
pub type FFElement = u32;

/// Presentation of GF(p^n) by a monic irreducible polynomial, with log/exp
/// tables over a primitive element.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    /// Coefficients of the modulus from degree 0 up to (and including) the
    /// leading 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^n` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p as u32, n))
}

/// Polynomial over GF(p), coefficients low to high.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (k, &c) in m.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - f * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Exhaustive irreducibility: no monic factor of degree 1..=n/2 divides.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = digits(code, p, d);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut x: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((x % p as u64) as u32);
        x /= p as u64;
    }
    out
}

impl FieldSpec {
    /// GF(p^n) with the lexicographically smallest monic irreducible modulus
    /// (lower coefficients read as a base-p number).
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::Unsupported(
                "extension degree must be at least 1".into(),
            ));
        }
        let q64 = (p as u64).checked_pow(n).filter(|&q| q <= 1 << 16);
        let Some(q64) = q64 else {
            return Err(Error::Unsupported(format!(
                "field size {p}^{n} exceeds 2^16"
            )));
        };
        let q = q64 as u32;
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            (0..(q as u64))
                .map(|code| {
                    let mut m = digits(code, p, n as usize);
                    m.push(1);
                    m
                })
                .find(|m| m[0] != 0 && is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        let mut field = Self {
            p,
            n,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, n)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (n, p) = (self.n as usize, self.p);
        let ca = digits(a as u64, p, n);
        let cb = digits(b as u64, p, n);
        let mut prod = vec![0u32; 2 * n];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let r = if n == 1 {
            vec![prod[0]]
        } else {
            poly_rem(&prod, &self.modulus, p)
        };
        self.from_coeffs(&r)
    }

    fn build_tables(&mut self) {
        let order = self.q - 1;
        let g = (1..self.q)
            .find(|&g| {
                let mut x = 1;
                for k in 1..=order {
                    x = self.slow_mul(x, g);
                    if x == 1 {
                        return k == order;
                    }
                }
                false
            })
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1;
        for k in 0..order {
            exp.push(x);
            log[x as usize] = k;
            x = self.slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn coeffs(&self, a: FFElement) -> Vec<u32> {
        digits(a as u64, self.p, self.n as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> FFElement {
        c.iter()
            .rev()
            .fold(0u32, |acc, &x| acc * self.p + x % self.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = FFElement> {
        0..self.q
    }

    pub fn add(&self, a: FFElement, b: FFElement) -> FFElement {
        if self.p == 2 {
            return a ^ b;
        }
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: FFElement) -> FFElement {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: FFElement, b: FFElement) -> FFElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FFElement, b: FFElement) -> FFElement {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let k = (self.log[a as usize] + self.log[b as usize]) % order;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: FFElement) -> Result<FFElement> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: FFElement, e: u64) -> FFElement {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// The involution `x -> x^(p^(n/2))`, fixing the index-2 subfield.
    pub fn conj(&self, a: FFElement) -> Result<FFElement> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::NoConjugation);
        }
        Ok(self.pow(a, (self.p as u64).pow(self.n / 2)))
    }

    /// Order of the index-2 subfield, when it exists.
    pub fn half_order(&self) -> Option<u32> {
        self.n.is_multiple_of(2).then(|| self.p.pow(self.n / 2))
    }
}

/// Binary field operation selector for [`field_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Conj,
}

/// Single entry point mirroring the four basic operations; `b` is ignored by
/// the unary ones.
pub fn field_arithmetic(
    f: &FieldSpec,
    a: FFElement,
    b: FFElement,
    op: FieldOp,
) -> Result<FFElement> {
    match op {
        FieldOp::Add => Ok(f.add(a, b)),
        FieldOp::Mul => Ok(f.mul(a, b)),
        FieldOp::Inv => f.inv(a),
        FieldOp::Conj => f.conj(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.add(1, 1), 0);
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.mul(2, 2), 1);
        assert!(matches!(FieldSpec::new(6, 1), Err(Error::NotPrime(6))));
    }

    #[test]
    fn gf4_structure() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = 2; // the class of x
        assert_eq!(f.mul(w, w), 3); // w^2 = w + 1
        assert_eq!(f.conj(w).unwrap(), 3);
        assert_eq!(f.conj(f.conj(w).unwrap()).unwrap(), w);
        assert!(matches!(f.inv(0), Err(Error::ZeroInverse)));
        assert_eq!(field_arithmetic(&f, 1, 1, FieldOp::Add).unwrap(), 0);
    }

    #[test]
    fn gf9_modulus_is_smallest() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(matches!(
            FieldSpec::of_order(6),
            Err(Error::NotPrimePower(6))
        ));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 4)] {
            let f = FieldSpec::new(p, n).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
        }
    }

    #[test]
    fn conjugation_is_involutory_automorphism_fixing_subfield() {
        for (p, n) in [(2, 2), (3, 2), (2, 4)] {
            let f = FieldSpec::new(p, n).unwrap();
            let half = f.half_order().unwrap();
            let mut fixed = 0;
            for a in f.elements() {
                let ca = f.conj(a).unwrap();
                assert_eq!(f.conj(ca).unwrap(), a);
                if ca == a {
                    fixed += 1;
                }
                for b in f.elements() {
                    assert_eq!(f.conj(f.mul(a, b)).unwrap(), f.mul(ca, f.conj(b).unwrap()));
                    assert_eq!(f.conj(f.add(a, b)).unwrap(), f.add(ca, f.conj(b).unwrap()));
                }
            }
            assert_eq!(fixed, half);
        }
    }
}
