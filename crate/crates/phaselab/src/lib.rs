//! Numerical laboratory for the emergence of classical statistics from
//! quantum mechanics at limited observational resolution.
//!
//! The library is organised around a coarse lattice of phase-space points
//! (p, q) with spacings `dq`, `dp`. A minimum-uncertainty Gaussian packet is
//! attached to every lattice point; once the spacings exceed the packet
//! widths (`dq >> 2 xi`, `dp >> hbar/xi`) the packets become locally
//! orthogonal and the lattice behaves like a classical phase space:
//!
//! * [`packet`] — the Gaussian packets themselves: evaluation, analytic and
//!   quadrature overlaps, position/momentum moments, eigenfunction residuals.
//! * [`phase_grid`] — the lattice, projection of arbitrary wave functions
//!   onto it, and reconstruction from the projection coefficients.
//! * [`expectation`] — expectation values split into diagonal (classical
//!   mixture) and off-diagonal (interference) parts, plus resolution sweeps
//!   that quantify how interference dies off with coarser grids.
//! * [`decoherence`] — energy-entangled system + reservoir states with
//!   random phases; reservoir averaging collapses them onto the Gibbs
//!   mixture, by two independent statistical routes.
//! * [`qsm`] — grand-canonical statistical mechanics written as a classical
//!   phase-space integral with a commutation function `W` and a
//!   symmetrization function `eta` carrying all quantum corrections.
//! * [`oracle`] — dense brute-force quantum mechanics on a periodic grid
//!   (spectral kinetic energy, exact diagonalization, symmetrized state
//!   sums) used to validate everything else.
//!
//! All quantities are in caller-chosen units; `hbar` is an explicit field
//! everywhere, never a hard-coded constant.

pub mod decoherence;
pub mod error;
pub mod expectation;
pub mod grid;
pub mod oracle;
pub mod packet;
pub mod phase_grid;
pub mod qsm;
pub mod stats;

pub(crate) mod perm;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
