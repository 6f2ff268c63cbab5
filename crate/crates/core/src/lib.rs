//! Decoherence matrices of discrete-time quantum walks on `n`-step path
//! spaces, and their von Neumann entropies.
//!
//! A quantum walk on the line assigns every length-`n` path of left/right
//! steps a complex 2-vector weight. Pairwise inner products of these weights,
//! masked by a *restriction subset* of path pairs, form a dense Hermitian,
//! unit-trace, positive semidefinite matrix: the decoherence matrix. This
//! crate builds those matrices, computes their spectra two independent ways
//! (a dense Jacobi eigensolver and a closed form through an associated
//! correlated random walk), and evaluates the entropy scaling laws that the
//! spectra obey as `n` grows.
//!
//! The crate is `no_std` (`alloc` required); all floating-point math goes
//! through `libm`. IO, file formats, and the command-line front end live in
//! the companion `decomat-cli` crate.
//!
//! Organization:
//!
//! - [`pathspace`]: paths, orderings, the quantum coin, path weights, and
//!   restriction subsets with their equivalence-class labels.
//! - [`decoherence`]: dense matrix construction, the two-site product form,
//!   q-measures of events, and zero-pattern (`precedes`) diagnostics.
//! - [`corrw`]: the `(p0, p)`-correlated random walk whose path probabilities
//!   reproduce the squared weight norms, plus exact position distributions
//!   and Shannon entropies.
//! - [`spectra`]: the Jacobi eigenvalue oracle, closed-form spectra per
//!   restriction kind, and exact entropy formulas.
//! - [`asymptotics`]: Fourier symbol, Gaussian limit, and convergence
//!   reports for the entropy scaling claims.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod corrw;
pub mod decoherence;
pub mod math;
pub mod pathspace;
pub mod rng;
pub mod spectra;

pub use num_complex::Complex64;

use thiserror::Error;

/// Errors for path-space and spectral computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin is not unitary (constraint residual {0:e})")]
    NotUnitary(f64),

    #[error("coin entry has modulus {0:e} (all four entries must be nonzero)")]
    ZeroEntry(f64),

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("path length {n} exceeds cap {cap}")]
    NTooLarge { n: usize, cap: usize },

    #[error("path length must be at least 1")]
    EmptyPath,

    #[error("path length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("position {x} unreachable at time {n} (parity or range)")]
    InvalidPosition { x: i64, n: usize },

    #[error("event index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),

    #[error("q-measure has non-real value (imaginary part {0:e})")]
    NonRealMeasure(f64),

    #[error("persistence probability {0} is degenerate (must lie strictly inside (0, 1))")]
    DegenerateP(f64),

    #[error("first-step probability {0} outside [0, 1]")]
    InvalidP0(f64),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi sweep cap {0} reached without convergence")]
    NoConvergence(usize),

    #[error("eigenvalue {0:e} below the PSD clip threshold")]
    NegativeEigenvalue(f64),

    #[error("spectrum does not sum to 1 (sum {0})")]
    SpectrumNotNormalized(f64),

    #[error("spectrum size mismatch: {0} vs {1} values")]
    SizeMismatch(usize, usize),

    #[error("need at least 3 points, got {0}")]
    InsufficientPoints(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
