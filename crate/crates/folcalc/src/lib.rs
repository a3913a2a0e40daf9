//! Calculus of matrix-valued differential operators on a foliated flat torus
//! `T^n = (R/2piZ)^n`, with the anisotropic order convention that counts
//! leafwise derivatives with weight 1 and transverse derivatives with weight 2.
//!
//! The crate computes the Fredholm index of such an operator two independent
//! ways and checks that they agree:
//!
//! * **analytic** — exact rectangular Fourier-Galerkin matrices, singular-value
//!   counts of kernel and cokernel ([`galerkin`]);
//! * **topological** — Chern-Weil integration of the graph-projection field of
//!   the weighted principal symbol over phase space ([`chernform`]).
//!
//! Supporting machinery: exact operator algebra with trigonometric-polynomial
//! coefficients ([`opcalc`]), weighted symbols and graph projections
//! ([`symbolics`]), graded-dilation deformation diagnostics ([`deform`]), and
//! an operator expression language plus run configuration ([`expr`],
//! [`config`]).
//!
//! All coefficient arithmetic is exact in Fourier space; the only numerical
//! error on the analytic side is mode truncation plus the SVD, and on the
//! topological side quadrature plus fiber truncation.

pub mod chernform;
pub mod config;
pub mod deform;
mod error;
pub mod expr;
pub mod galerkin;
pub mod opcalc;
pub mod report;
pub mod symbolics;
pub(crate) mod util;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix used throughout.
pub type CMat = nalgebra::DMatrix<num_complex::Complex64>;
/// Dense complex vector.
pub type CVec = nalgebra::DVector<num_complex::Complex64>;

/// Version string embedded in every serialized report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
