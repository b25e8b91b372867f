//! Two linearly coupled oscillators mapped onto angular momentum.
//!
//! The product basis `|n1>|n2>` is labelled `|J; M>` with `J = (n1 + n2)/2`
//! and `M = (n1 - n2)/2`; normal modes are the same labels rotated by the
//! mixing angle `gamma`.

mod dynamics;
mod params;
mod wigner;

pub use dynamics::{
    evolve_in_number_basis, f1_all, f1_k, f1_k_appendix, f1_k_double_binomial, f2_k,
    measure_case1, measure_case2, rho1_case1, rho1_case2, rho1_general, rho2_general,
    DiagonalReducedDensity, EigenAmplitudes,
};
pub use params::{derive_params, energy_eigenvalue, heisenberg_coeffs, Mode, ModeParams};
pub use wigner::{
    jacobi_poly, wigner_matrix, wigner_u, wigner_u_highest, wigner_u_jacobi, WignerMatrix, MAX_J,
};
