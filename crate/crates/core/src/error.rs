use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which of the three Jacobi sequences an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diagonal {
    /// Sub-diagonal `a_n`.
    A,
    /// Main diagonal `b_n`.
    B,
    /// Super-diagonal `c_n`.
    C,
}

impl Diagonal {
    pub fn key(self) -> &'static str {
        match self {
            Diagonal::A => "a",
            Diagonal::B => "b",
            Diagonal::C => "c",
        }
    }
}

impl std::fmt::Display for Diagonal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero off-diagonal entry {key}[{index}]")]
    ZeroOffDiagonal { key: Diagonal, index: usize },

    #[error("duplicate index {key}[{index}]")]
    DuplicateIndex { key: Diagonal, index: usize },

    #[error("index {key}[{index}] must be at least 1")]
    InvalidIndex { key: Diagonal, index: usize },

    #[error("non-finite entry {key}[{index}]")]
    NonFiniteEntry { key: Diagonal, index: usize },

    #[error("spectral parameter z must be nonzero")]
    ZeroSpectralParameter,

    #[error("spectral parameter z = {0} lies outside the closed unit disk")]
    OutsideDisk(Complex64),

    #[error("spectral parameter z = {0} is an endpoint ±1")]
    BandEdge(Complex64),

    #[error("index {index} out of range for a segment covering {start}..={end}")]
    IndexOutOfRange { index: usize, start: usize, end: usize },

    #[error("segment length {0} is too short (need at least 2 values)")]
    SegmentTooShort(usize),

    #[error("successive approximations did not reach tolerance after {iterations} iterations (sup-norm {sup_norm:e})")]
    NotConverged { iterations: usize, sup_norm: f64 },

    #[error("QR iteration did not converge after {sweeps} sweeps ({} eigenvalues found)", found.len())]
    QrNotConverged { sweeps: usize, found: Vec<Complex64> },

    #[error("z = {z} is not a Jost zero (|v0(z)| = {residual:e})")]
    NotAJostZero { z: Complex64, residual: f64 },

    #[error("truncation size {0} is too small")]
    TruncationTooSmall(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
