use thiserror::Error;

/// Errors produced while validating inputs or running numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("spectrum of dimension {0} is too small (need d >= 2)")]
    DimensionTooSmall(usize),

    #[error("spectrum entry {index} is negative beyond tolerance: {value:e}")]
    NegativeEigenvalue { index: usize, value: f64 },

    #[error("spectrum sums to {sum} which differs from 1 beyond tolerance {tol:e}")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("spectrum is not descending at index {index}: {left} < {right}")]
    NotDescending { index: usize, left: f64, right: f64 },

    #[error("purity indices are not non-decreasing at index {index}: {left} > {right}")]
    UnorderedIndices { index: usize, left: f64, right: f64 },

    #[error("purity index {index} lies outside [0, 1]: {value}")]
    IndexOutOfRange { index: usize, value: f64 },

    #[error("value {value} outside domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("matrix is not Hermitian: max |m - m^H| entry is {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },

    #[error("matrix trace {trace} differs from 1 beyond tolerance")]
    BadTrace { trace: f64 },

    #[error("matrix has eigenvalue {value:e} below the positivity tolerance")]
    NotPositiveSemidefinite { value: f64 },

    #[error("temperature must be positive (or +inf), got {0}")]
    InvalidTemperature(f64),

    #[error("Bloch vector norm {0} exceeds 1")]
    BlochNormTooLarge(f64),

    #[error("basis is not orthonormal: max |U^H U - I| entry is {max_deviation:e}")]
    NotOrthonormal { max_deviation: f64 },

    #[error("degeneracy g = {g} outside [1, {d}]")]
    BadDegeneracy { g: usize, d: usize },

    #[error("chain length {0} outside supported range 2..=9")]
    BadChainLength(usize),

    #[error("sampler attempt budget of {budget} exhausted after {accepted} accepted samples")]
    AttemptBudgetExhausted { budget: u64, accepted: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid matrix file: {0}")]
    MatrixFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
