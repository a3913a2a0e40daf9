//! Analytic side: exact rectangular Fourier-Galerkin matrices and
//! singular-value index counting.
//!
//! An operator with coefficient bandwidth `B` maps trig polynomials of
//! bandwidth `K` into bandwidth `K + B`, so its compression to domain modes
//! `||k||_inf <= K` and codomain modes `||k||_inf <= K + B` represents the
//! operator *exactly* on that domain - there is no discretization error, only
//! the domain cutoff. Kernel and cokernel dimensions are read off as counts
//! of near-zero singular values of the rectangular matrix and of the
//! corresponding matrix of the formal adjoint,
//! never of a square compression: a square truncation forces
//! `#ker = #coker` by shape alone and carries no index information.

mod index;
mod matrix;
mod probe;
mod sobolev;

pub use index::{numerical_index, IndexReport, SweepEntry, ThresholdRule};
pub use matrix::{galerkin_matrix, GalerkinMatrix, ModeMap};
pub use probe::{apriori_probe, ProbeReport};
pub use sobolev::weighted_sobolev_norm;
