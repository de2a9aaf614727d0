use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} is below the minimum of 2")]
    DimTooSmall(usize),
    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    DimTooLarge { dim: usize, max: usize },
    #[error("expected {expected} entries for a square matrix, got {got}")]
    BadShape { expected: usize, got: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix is not Hermitian (‖m − m†‖ = {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not unitary (‖U†U − 1‖ = {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("eigenvalue {0:.3e} is negative beyond tolerance")]
    NegativeEigenvalue(f64),
    #[error("rank {rank} is outside 1..={dim}")]
    BadRank { rank: usize, dim: usize },
    #[error("vector norm is {0}, expected 1")]
    NotNormalized(f64),
    #[error("Weyl index ({k}, {l}) is out of range for d = {dim}")]
    IndexOutOfRange { k: usize, l: usize, dim: usize },
    #[error("moment exponent p = {0} must be at least 2")]
    BadExponent(f64),
    #[error("Bloch vector has length {0} > 1")]
    BadBloch(f64),
    #[error("operation requires d = 2, got d = {0}")]
    WrongDim(usize),
    #[error("mixing parameter p = {0} is outside [0, 1]")]
    BadP(f64),
    #[error("finite-difference step {step} at p0 = {p0} is invalid")]
    BadStep { p0: f64, step: f64 },
    #[error("expansion offset {0} is outside (0, 0.1]")]
    BadEpsilon(f64),
    #[error("d = {0} is not prime")]
    NotPrime(usize),
    #[error("no built-in SIC fiducial for d = {0}")]
    NoKnownFiducial(usize),
    #[error("state is not pure (purity {0})")]
    NotPure(f64),
    #[error("state is not a stabilizer state (C = {found}, expected {expected})")]
    NotStabilizer { found: f64, expected: f64 },
    #[error("{what}: deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    Constraint {
        what: &'static str,
        deviation: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
