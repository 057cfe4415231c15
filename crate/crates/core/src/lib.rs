//! Numerical laboratory for linear summability means of Fourier series.
//!
//! The crate evaluates classical summability kernels (Dirichlet, Fejér,
//! Vallée-Poussin, Riesz, Rogosinski-Bernstein, ...), applies multiplier
//! methods to Fourier series of 2π-periodic integrable functions, classifies
//! points by the behaviour of the averaged primitive `(1/h)∫₀ʰ f(x+t) dt`,
//! and checks Wiener-algebra membership of multiplier functions through
//! numerically computed Fourier densities.
//!
//! Modules map onto the subject areas:
//!
//! - [`periodic`]: periodic functions, quadrature-backed Fourier
//!   coefficients, partial sums, averaged primitives.
//! - [`kernels`]: closed-form kernels, kernel differential identities,
//!   L¹ norms and coefficient-side lower bounds.
//! - [`multipliers`]: multiplier families λ_{k,n} and linear means.
//! - [`points`]: d-point / Lebesgue-point classification, divergence
//!   witnesses.
//! - [`lab`]: convergence experiments producing [`record::ExperimentRecord`]
//!   rows.
//! - [`wiener`]: Fourier densities on the line, sufficient-condition
//!   hypothesis checks.
//! - [`suite`]: named experiment suites behind the `sumlab` binary.

pub mod catalog;
pub mod error;
pub mod fftgrid;
pub mod kernels;
pub mod lab;
pub mod multipliers;
pub mod periodic;
pub mod points;
pub mod quad;
pub mod record;
pub mod suite;
pub mod wiener;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default absolute tolerance for quadrature-backed coefficient work.
pub const DEFAULT_TOL: f64 = 1e-9;
