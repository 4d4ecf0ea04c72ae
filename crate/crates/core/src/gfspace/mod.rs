//! Finite fields, subspaces over them, and the classical forms whose
//! maximal isotropic subspaces are the vertices of dual polar graphs.

mod ffsubspace;
mod field;
mod form;

pub use ffsubspace::{enumerate_subspaces, projective_points, subspace_canonical, FFSubspace};
pub use field::{field_arithmetic, is_prime, prime_power, FFElement, FieldOp, FieldSpec};
pub use form::{form_value, max_isotropic_enumerate, FormKind, FormSpec};
