mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn subspace_dimension_laws(input in dimension_laws()) {
        check_dimension_laws(input)?;
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials(input in gaussian_counts()) {
        check_gaussian_counts(input)?;
    }

    #[test]
    fn idempotents_are_orthogonal_and_sum_to_identity(input in bose_mesner_inputs()) {
        check_bose_mesner(input)?;
    }

    #[test]
    fn dual_adjacency_products_follow_krein_parameters(input in krein_inputs()) {
        check_dual_krein(input)?;
    }
}

#[test]
fn dense_idempotents_on_c22() {
    use nucleus_core::ratlinalg::RatMatrix;
    let ctx = c22();
    let sd = ctx.spectral();
    let es: Vec<RatMatrix> = (0..=2)
        .map(|i| sd.idempotent_matrix(i, ctx.distances()))
        .collect();
    let mut sum = RatMatrix::zeros(15, 15);
    for e in &es {
        sum = &sum + e;
    }
    assert_eq!(sum, RatMatrix::identity(15));
    for (i, ei) in es.iter().enumerate() {
        for (j, ej) in es.iter().enumerate() {
            let p = ei * ej;
            if i == j {
                assert_eq!(&p, ei);
            } else {
                assert!(p.is_zero());
            }
        }
    }
}
