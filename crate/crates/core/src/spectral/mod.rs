//! Spectra, primitive idempotents, Krein parameters and the dual side.

mod base;
mod bose_mesner;
mod spectrum;

pub use base::{verify_algebra_relations, BaseContext};
pub use bose_mesner::{
    krein_parameters, primitive_idempotents, q_poly_orderings, verify_bose_mesner, SpectralData,
    DENSE_LIMIT,
};
pub(crate) use spectrum::poly_from_roots;
pub use spectrum::{integer_spectrum, Spectrum};
