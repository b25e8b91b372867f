//! Entanglement dynamics of two interacting oscillators.
//!
//! Two scenarios are covered:
//!
//! * two linear oscillators coupled in the rotating-wave approximation,
//!   treated through the coupled-boson (Schwinger) representation
//!   ([`coupled_boson`]);
//! * a linear oscillator resonantly coupled to an angular-momentum
//!   oscillator with `2j + 1` levels ([`spin_boson`]), together with the
//!   commutator-parameterized quantum/classical equations of motion
//!   ([`heisenberg`]) and the SU(n) generator machinery used to analyse
//!   the block propagators ([`su_n`]).
//!
//! Everything rests on the dense complex linear algebra in [`algebra`], and
//! every closed form is cross-checked by brute-force tensor-product
//! evolution in [`oracle`].
//!
//! The crate is `no_std` and only needs `alloc`. All quantities are in units
//! with `hbar = 1`.

#![no_std]
// `num_traits::Float` supplies f64 math without std. Whenever std ends up in
// the build graph its inherent methods take precedence and those imports
// look unused.
#![allow(unused_imports)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod coupled_boson;
mod error;
mod halfint;
pub mod heisenberg;
pub mod oracle;
pub mod spin_boson;
pub mod su_n;

pub use algebra::{
    CMatrix, DensityMatrix, HermitianMatrix, SpectralDecomposition, StateVector, C64,
};
pub use error::{Error, Result};
pub use halfint::HalfInt;

/// Tolerance for invariants checked when a value is constructed.
pub const CONSTRUCTION_TOL: f64 = 1e-10;
/// Tolerance for comparisons against an independent oracle.
pub const ORACLE_TOL: f64 = 1e-9;
/// Tolerance for comparisons against closed-form expressions.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
