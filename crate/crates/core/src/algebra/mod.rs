//! Dense complex linear algebra: Hermitian eigensolver, spectral time
//! evolution, partial traces and purity.

pub(crate) mod combinatorics;
mod eigen;
mod matrix;
mod state;

pub use combinatorics::{
    binomial, log_binomial, log_factorial, log_factorial_capped, DEFAULT_FACTORIAL_CAP,
};
pub use eigen::{eig_hermitian, spectral_evolve, SpectralDecomposition};
pub use matrix::{CMatrix, HermitianMatrix, C64};
pub use state::{
    entanglement_measure, partial_trace_bipartite, purity, BipartiteLayout, DensityMatrix,
    StateVector, Subsystem,
};
