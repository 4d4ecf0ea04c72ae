use thiserror::Error;

/// Errors raised by the library. Certification failures carry a rendered
/// witness so callers can report them without access to internal state.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("conjugation requires an even extension degree")]
    NoConjugation,
    #[error("subspace dimension {k} out of range 0..={dim}")]
    DimensionOutOfRange { k: usize, dim: usize },
    #[error("unsupported family or parameters: {0}")]
    Unsupported(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not distance-regular: {0}")]
    NotDistanceRegular(String),
    #[error("spectrum is not integral: minimal polynomial has a non-integer root")]
    NonIntegerSpectrum,
    #[error("repeated eigenvalue {0}")]
    RepeatedEigenvalue(String),
    #[error("negative Krein parameter q^{h}_{{{i},{j}}} = {value}")]
    NegativeKrein {
        h: usize,
        i: usize,
        j: usize,
        value: String,
    },
    #[error("not Q-polynomial: {0}")]
    NotQPolynomial(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("subspace is not invariant under {0}")]
    NotInvariant(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
