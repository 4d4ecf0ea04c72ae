use num_traits::One;
use serde::Serialize;

use super::{DistanceData, Graph};
use crate::drg::distance::IntersectionNumbers;
use crate::error::{Error, Result};
use crate::gfspace::{FieldSpec, FormKind, FormSpec};
use crate::qbinom::{binom2, gaussian_binomial, q_int};
use crate::ratlinalg::{frac, rat, Rational};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DualPolarKind {
    B,
    C,
    D,
    /// ²A_{2D}: Hermitean form on dimension 2D+1.
    TwoAEven,
    /// ²A_{2D-1}: Hermitean form on dimension 2D.
    TwoAOdd,
}

impl DualPolarKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::TwoAEven => "2A-even",
            Self::TwoAOdd => "2A-odd",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::B, Self::C, Self::D, Self::TwoAEven, Self::TwoAOdd]
            .into_iter()
            .find(|k| k.name() == s)
    }

    pub fn label(self, d: usize, q: u64) -> String {
        match self {
            Self::TwoAEven => format!("2A_{}({q})", 2 * d),
            Self::TwoAOdd => format!("2A_{}({q})", 2 * d - 1),
            _ => format!("{}_{d}({q})", self.name()),
        }
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, Self::TwoAEven | Self::TwoAOdd)
    }

    pub(crate) fn form(self, d: usize, field: FieldSpec) -> Result<FormSpec> {
        let (kind, dim) = match self {
            Self::B => (FormKind::QuadraticParabolic, 2 * d + 1),
            Self::C => (FormKind::Symplectic, 2 * d),
            Self::D => (FormKind::QuadraticHyperbolic, 2 * d),
            Self::TwoAEven => (FormKind::Hermitean, 2 * d + 1),
            Self::TwoAOdd => (FormKind::Hermitean, 2 * d),
        };
        FormSpec::new(kind, dim, field)
    }

    /// Closed-form parameters; `q` is the order of the base field as given
    /// on the command line.
    pub fn params(self, d: usize, q: u64) -> Result<DualPolarParams> {
        if crate::gfspace::prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        let r = q as i64;
        // (q_eff, q_eff^e) with q_eff the q of the intersection-number formulas.
        let (qq, qe) = match self {
            Self::B | Self::C => (r, rat(1)),
            Self::D => (r, frac(1, r)),
            Self::TwoAEven => (r * r, rat(r)),
            Self::TwoAOdd => (r * r, frac(1, r)),
        };
        Ok(DualPolarParams::new(d, qq, qe))
    }
}

/// `D`, `q` and `q^e` for a dual polar graph, with the closed forms for its
/// parameters. `a_1 = q^(e+1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPolarParams {
    d: usize,
    q: i64,
    q_e: Rational,
    a1: i64,
}

impl DualPolarParams {
    pub fn new(d: usize, q: i64, q_e: Rational) -> Self {
        let a1 = &q_e * rat(q) - rat(1);
        assert!(a1.is_integer(), "q^(e+1) must be an integer");
        let a1 = a1.to_integer().try_into().expect("a1 fits in i64");
        Self { d, q, q_e, a1 }
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    pub fn is_bipartite(&self) -> bool {
        self.a1 == 0
    }

    pub fn qint(&self, i: usize) -> i64 {
        q_int(i as u32, self.q as u64) as i64
    }

    pub fn qbinom(&self, i: usize) -> i64 {
        gaussian_binomial(self.d as u32, i as u32, self.q as u64) as i64
    }

    pub fn c(&self, i: usize) -> i64 {
        self.qint(i)
    }

    pub fn a(&self, i: usize) -> i64 {
        self.a1 * self.qint(i)
    }

    pub fn b(&self, i: usize) -> i64 {
        (self.a1 + 1) * (self.q.pow(self.d as u32) - self.q.pow(i as u32)) / (self.q - 1)
    }

    pub fn k(&self, i: usize) -> i64 {
        (self.a1 + 1).pow(i as u32) * self.q.pow(binom2(i as u32)) * self.qbinom(i)
    }

    pub fn order(&self) -> i64 {
        (0..=self.d).map(|i| self.k(i)).sum()
    }

    pub(crate) fn order_estimate(&self) -> f64 {
        (0..=self.d).map(|i| self.k(i) as f64).sum()
    }

    pub fn theta(&self, i: usize) -> i64 {
        let q = self.q;
        ((self.a1 + 1) * q.pow((self.d - i) as u32) - q.pow(i as u32) - self.a1) / (q - 1)
    }

    pub fn theta_star(&self, i: usize) -> Rational {
        let q = rat(self.q);
        let qd = num_traits::pow(q.clone(), self.d);
        let qi = num_traits::pow(q.clone(), i);
        let one = Rational::one();
        let lead = (&qd * &self.q_e + &q) / (&self.q_e + &one);
        let tail = ((&qd * &self.q_e + &one) / qi - &self.q_e - &one) / (&q - &one);
        lead * tail
    }

    /// `[D r]_q - [D r-1]_q`, the number of nucleus modules with endpoint `r`.
    pub fn mult(&self, r: usize) -> i64 {
        let prev = if r == 0 { 0 } else { self.qbinom(r - 1) };
        self.qbinom(r) - prev
    }
}

/// Compares measured intersection numbers and valencies with the closed forms.
pub fn verify_dual_polar_parameters(
    g: &Graph,
    dd: &DistanceData,
    pn: &IntersectionNumbers,
) -> Result<Report> {
    let dp = g
        .dual_polar()
        .ok_or_else(|| Error::Precondition("not a dual polar graph".into()))?;
    let p = &dp.params;
    let mut rep = Report::new();
    rep.record(
        "diameter",
        dd.diameter() == p.d,
        format!("measured {}, expected {}", dd.diameter(), p.d),
    );
    if dd.diameter() != p.d {
        return Ok(rep);
    }
    rep.record(
        "order",
        g.order() as i64 == p.order(),
        format!("|X| = {}, sum k_i = {}", g.order(), p.order()),
    );
    let bad = |f: &dyn Fn(usize) -> (i64, i64)| -> Vec<String> {
        (0..=p.d)
            .filter_map(|i| {
                let (m, e) = f(i);
                (m != e).then(|| format!("i={i}: measured {m}, expected {e}"))
            })
            .collect()
    };
    let checks: [(&str, Vec<String>); 5] = [
        ("c_i", bad(&|i| (pn.c(i), p.c(i)))),
        ("a_i", bad(&|i| (pn.a(i), p.a(i)))),
        ("b_i", bad(&|i| (pn.b(i), p.b(i)))),
        ("k_i", bad(&|i| (pn.k(i), p.k(i)))),
        ("c+a+b=k", bad(&|i| (pn.c(i) + pn.a(i) + pn.b(i), pn.k(1)))),
    ];
    for (name, errs) in checks {
        rep.record(name, errs.is_empty(), errs.join("; "));
    }
    let e1 = p.q_e.clone() * rat(p.q) - Rational::one();
    rep.record(
        "a1=q^(e+1)-1",
        rat(pn.a(1)) == e1,
        format!("a1 = {}", pn.a(1)),
    );
    rep.record(
        "bipartite iff a1=0",
        (0..=p.d).all(|i| pn.a(i) == 0) == (p.a1 == 0),
        "",
    );
    Ok(rep)
}
