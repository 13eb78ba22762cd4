use thiserror::Error;

/// Errors raised by the linear-algebra kernel, the quantum types and the optimizers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("entry buffer has length {found}, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { dim: usize, rank: usize },

    #[error("trace = {0}")]
    InvalidTrace(f64),

    #[error("not positive semidefinite (min eigenvalue = {0:e})")]
    NotPositive(f64),

    #[error("basis vectors are not orthonormal (max |V^dagger V - I| = {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("spectrum has length {found}, expected {expected}")]
    SpectrumLength { expected: usize, found: usize },

    #[error("spectrum contains a non-finite value")]
    NonFiniteSpectrum,

    #[error("spectrum is not normalized (max |value| = {0})")]
    UnnormalizedSpectrum(f64),

    #[error("operator has zero operator norm")]
    ZeroOperator,

    #[error("shifted operator norm ||X - <X> I|| = {0:e} vanishes")]
    DegenerateShiftedOperator(f64),

    #[error("postselection probability {0:e} is below threshold")]
    ZeroPostselectionProbability(f64),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("expected {expected} chart parameters, found {found}")]
    BadParameterCount { expected: usize, found: usize },

    #[error("operation requires a qubit, got dimension {0}")]
    NotQubit(usize),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
