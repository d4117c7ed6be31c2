use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not Hermitian (relative deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    EigenFailure { iterations: usize },

    #[error("zero matrix: the top singular subspace is undefined")]
    ZeroMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptySet,

    #[error("region is not contained in the reference region (excess {excess:e})")]
    NotContained { excess: f64 },

    #[error(
        "ambiguous classification: spectral radius {spectral_radius}, numerical radius \
         {numerical_radius}, norm {norm}"
    )]
    AmbiguousClassification {
        spectral_radius: f64,
        numerical_radius: f64,
        norm: f64,
    },

    #[error("matrix is not normal (commutator norm {commutator:e})")]
    NotNormal { commutator: f64 },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}
