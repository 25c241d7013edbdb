//! Jost functions and discrete spectrum of complex Jacobi matrices.
//!
//! The operators handled here are finite-rank perturbations of the discrete
//! laplacian on `ℓ²(ℕ)`:
//!
//! ```text
//!     | b1 c1          |
//! J = | a1 b2 c2       |      a_n, c_n -> 1,  b_n -> 0
//!     |    a2 b3 c3    |
//!     |       .  .  .  |
//! ```
//!
//! The crate builds the Jost solution of the associated three-term recurrence
//! (both by exact back-substitution of the discrete integral equation and by
//! successive approximations), locates the discrete spectrum through the zeros
//! of the Jost polynomial, and evaluates the spectrum-free regions together
//! with a truncated-matrix eigenvalue oracle used to cross-check everything.
//!
//! Module map:
//!
//! - [`operator`]: operator model, weights `d_m`, recurrences, Wronskian, Joukowski map
//! - [`green`]: Green kernel and integral-equation kernel
//! - [`poly`]: dense complex polynomials and their roots
//! - [`jost`]: Jost solution and error bounds
//! - [`regions`]: Omega constant, zero-free region, rectangles, grids
//! - [`spectrum`]: Jost zeros, truncation oracle, reconciliation
//! - [`spec_file`], [`output`]: JSON operator files, CSV grids, SVG plots
//! - [`verify`]: seeded property suites behind `jacobi-spectra verify`
//! - [`cli`]: command implementations for the `jacobi-spectra` binary

pub mod cli;
pub mod error;
pub mod green;
pub mod jost;
pub mod operator;
pub mod output;
pub mod poly;
pub mod regions;
pub mod spec_file;
pub mod spectrum;
pub mod verify;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use jost::{jost_backsubstitute, jost_function, jost_successive, JostSolution};
pub use operator::{ComplexJacobiOperator, SolutionSegment, SpectralPoint};
pub use poly::ComplexPolynomial;
pub use regions::{omega_constant, RegionReport};
pub use spectrum::{discrete_spectrum, jost_zeros, reconcile, truncated_eigenvalues, SpectrumResult};
