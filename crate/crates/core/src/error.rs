use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    InvalidArgument(String),
    IndexOutOfRange { index: usize, bound: usize },
    DimensionMismatch { expected: usize, found: usize },
    /// `gamma[row][col] != gamma[col][row]`.
    Asymmetric { row: usize, col: usize },
    /// Nonzero weight on a pair with `f(x) == f(y)`.
    EqualOutputPair { x: usize, y: usize },
    NegativeWeight { x: usize, y: usize, weight: f64 },
    /// The adversary matrix is identically zero, so the bound is undefined.
    DegenerateMatrix,
    NotUnitary { deviation: f64 },
    NotHermitian { deviation: f64 },
    InvalidBlock { index: usize, reason: &'static str },
    IntegrationFailure { input: usize, time: f64, drift: f64 },
    GridMismatch { input: usize },
    MissingTrajectory { input: usize },
    TooFewSamples { found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Asymmetric { row, col } => {
                write!(f, "matrix is not symmetric at ({row}, {col})")
            }
            Error::EqualOutputPair { x, y } => {
                write!(f, "nonzero weight on equal-output pair ({x}, {y})")
            }
            Error::NegativeWeight { x, y, weight } => write!(
                f,
                "negative weight {weight} at ({x}, {y}) in non-negative mode"
            ),
            Error::DegenerateMatrix => {
                write!(f, "degenerate adversary matrix: all weights are zero")
            }
            Error::NotUnitary { deviation } => {
                write!(f, "matrix is not unitary (deviation {deviation:e})")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "operator is not Hermitian (deviation {deviation:e})")
            }
            Error::InvalidBlock { index, reason } => {
                write!(f, "oracle block {index}: {reason}")
            }
            Error::IntegrationFailure { input, time, drift } => write!(
                f,
                "integration failure for input {input} at t = {time}: norm drift {drift:e}"
            ),
            Error::GridMismatch { input } => {
                write!(f, "trajectory for input {input} uses a different time grid")
            }
            Error::MissingTrajectory { input } => {
                write!(f, "no trajectory supplied for input {input}")
            }
            Error::TooFewSamples { found } => {
                write!(f, "need at least 2 samples, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
