//! Randomized properties shared by the property tests and the acceptance
//! run. Each property is a plain function so it can be driven by a
//! `TestRunner` with an explicit case count.

#![allow(dead_code)]

use std::sync::OnceLock;

use nucleus_core::drg::{build_family, DualPolarKind, Family};
use nucleus_core::gfspace::{enumerate_subspaces, FFSubspace, FieldSpec};
use nucleus_core::qbinom::gaussian_binomial;
use nucleus_core::ratlinalg::{int_kernel, kernel, rat, RatMatrix, Rational, Subspace};
use nucleus_core::spectral::BaseContext;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn c22() -> &'static BaseContext {
    static CTX: OnceLock<BaseContext> = OnceLock::new();
    CTX.get_or_init(|| {
        let g = build_family(&Family::DualPolar {
            kind: DualPolarKind::C,
            d: 2,
            q: 2,
        })
        .unwrap();
        BaseContext::from_graph(g, 0).unwrap()
    })
}

/// Small Q-polynomial instances for the Bose–Mesner identities.
pub fn small_contexts() -> &'static [BaseContext] {
    static CTX: OnceLock<Vec<BaseContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        [
            Family::Hypercube { d: 3 },
            Family::Hamming { d: 2, n: 3 },
            Family::Odd { d: 3 },
            Family::DualPolar {
                kind: DualPolarKind::C,
                d: 2,
                q: 2,
            },
            Family::DualPolar {
                kind: DualPolarKind::B,
                d: 2,
                q: 3,
            },
        ]
        .iter()
        .map(|f| BaseContext::from_graph(build_family(f).unwrap(), 0).unwrap())
        .collect()
    })
}

fn int_rows(max_rows: usize, n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max_rows)
}

fn to_rat(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect()
}

pub fn dimension_laws() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), int_rows(4, n), int_rows(4, n)))
}

pub fn check_dimension_laws(
    (n, a, b): (usize, Vec<Vec<i64>>, Vec<Vec<i64>>),
) -> Result<(), TestCaseError> {
    let u = Subspace::span(n, to_rat(&a));
    let w = Subspace::span(n, to_rat(&b));
    let s = u.sum(&w).unwrap();
    let i = u.intersect(&w).unwrap();
    prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
    prop_assert!(s.contains_subspace(&u) && u.contains_subspace(&i) && w.contains_subspace(&i));
    let full = Subspace::full(n);
    let perp = u.orth_complement(&full).unwrap();
    prop_assert_eq!(u.dim() + perp.dim(), n);
    prop_assert_eq!(perp.orth_complement(&full).unwrap(), u.clone());
    prop_assert_eq!(i.orth_complement(&s).unwrap().dim() + i.dim(), s.dim());
    let m = RatMatrix::from_rows(n, to_rat(&a));
    let k = kernel(&m);
    prop_assert_eq!(k.dim() + u.dim(), n);
    prop_assert_eq!(int_kernel(&a, n), k);
    Ok(())
}

pub fn gaussian_counts() -> impl Strategy<Value = (u64, usize, usize, Vec<Vec<u32>>)> {
    (prop::sample::select(vec![2u64, 3, 4]), 0usize..=4).prop_flat_map(|(q, m)| {
        // The ambient space is spanned by random vectors in GF(q)^4, so its
        // dimension is at most `m`.
        let vecs = prop::collection::vec(prop::collection::vec(0u32..q as u32, 4), m);
        (Just(q), Just(m), 0usize..=m, vecs)
    })
}

pub fn check_gaussian_counts(
    (q, _, k, vecs): (u64, usize, usize, Vec<Vec<u32>>),
) -> Result<(), TestCaseError> {
    let f = FieldSpec::of_order(q).unwrap();
    let ambient = FFSubspace::span(&f, 4, vecs);
    let dim = ambient.dim();
    let k = k.min(dim);
    let subs = enumerate_subspaces(&f, &ambient, k).unwrap();
    prop_assert_eq!(
        subs.len() as u64,
        gaussian_binomial(dim as u32, k as u32, q)
    );
    prop_assert!(subs.windows(2).all(|p| p[0] < p[1]));
    prop_assert!(subs
        .iter()
        .all(|s| s.dim() == k && ambient.contains_subspace(&f, s)));
    Ok(())
}

pub fn bose_mesner_inputs() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0usize..5).prop_flat_map(|c| {
        let n = small_contexts()[c].order();
        (Just(c), prop::collection::vec(-5i64..=5, n))
    })
}

/// `Σ E_i v = v` and `E_i E_j v = δ_ij E_i v` for a random vector `v`.
pub fn check_bose_mesner((c, v): (usize, Vec<i64>)) -> Result<(), TestCaseError> {
    let ctx = &small_contexts()[c];
    let v: Vec<Rational> = v.into_iter().map(rat).collect();
    let d = ctx.diameter();
    let proj: Vec<Vec<Rational>> = (0..=d).map(|i| ctx.apply_e(i, &v)).collect();
    let mut total = vec![rat(0); v.len()];
    for p in &proj {
        for (t, x) in total.iter_mut().zip(p) {
            *t += x;
        }
    }
    prop_assert_eq!(&total, &v);
    for i in 0..=d {
        for (j, pj) in proj.iter().enumerate() {
            let eij = ctx.apply_e(i, pj);
            if i == j {
                prop_assert_eq!(&eij, pj);
            } else {
                prop_assert!(eij.iter().all(|x| *x == rat(0)));
            }
        }
    }
    Ok(())
}

pub fn krein_inputs() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (0usize..=2, 0usize..=2, prop::collection::vec(-5i64..=5, 15))
}

/// `A*_i A*_j v = Σ_h q^h_{ij} A*_h v` on C_2(2).
pub fn check_dual_krein((i, j, v): (usize, usize, Vec<i64>)) -> Result<(), TestCaseError> {
    let ctx = c22();
    let v: Vec<Rational> = v.into_iter().map(rat).collect();
    let lhs = ctx.apply_astar_i(i, &ctx.apply_astar_i(j, &v));
    let mut rhs = vec![rat(0); v.len()];
    for h in 0..=2 {
        let q = ctx.spectral().krein(h, i, j);
        for (r, x) in rhs.iter_mut().zip(ctx.apply_astar_i(h, &v)) {
            *r += q * x;
        }
    }
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// Runs every property with `cases` cases; returns `(name, outcome)`.
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    fn go<S: Strategy>(
        cases: u32,
        s: S,
        f: impl Fn(S::Value) -> Result<(), TestCaseError>,
    ) -> Result<(), String> {
        let mut runner = TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        });
        runner.run(&s, f).map_err(|e| e.to_string())
    }
    vec![
        (
            "ratlinalg dimension laws",
            go(cases, dimension_laws(), check_dimension_laws),
        ),
        (
            "Gaussian-binomial counts",
            go(cases, gaussian_counts(), check_gaussian_counts),
        ),
        (
            "Bose–Mesner identities",
            go(cases, bose_mesner_inputs(), check_bose_mesner),
        ),
        (
            "A*_i A*_j = Σ q^h_ij A*_h on C_2(2)",
            go(cases, krein_inputs(), check_dual_krein),
        ),
    ]
}
