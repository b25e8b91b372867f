//! A linear oscillator resonantly coupled to an angular-momentum oscillator.
//!
//! The coupling conserves `n1 + J_z`, so the dynamics splits into
//! `(2j + 1)`-dimensional tridiagonal blocks that are diagonalized exactly.

mod block;
mod dynamics;
mod period;

pub use block::{
    approximate_spectrum_j1, build_block, closed_form_spectrum, pair_splittings, BlockBasis,
    BlockSpec, ClosedFormSpectrum,
};
pub use dynamics::{
    default_fd_step, early_time_expansion, emission_amplitude, evolve_and_reduce,
    jz_acceleration_expectation, jz_moments, measure_spin, BlockDynamics, SpinReducedDensity,
};
pub use period::{
    measure_period, period_detect, periodicity, propagator_distance, PeriodReport,
    DEFAULT_PERIOD_TOL,
};
