#![allow(dead_code)]

use entangle_core::algebra::{DensityMatrix, Subsystem};
use entangle_core::coupled_boson::{rho1_case1, ModeParams};
use entangle_core::oracle::{InitialState, OracleEvolution, TruncatedSpace, DEFAULT_DIM_CAP};
use entangle_core::spin_boson::{BlockDynamics, BlockSpec};
use entangle_core::{HalfInt, Result};

/// Index of `J + k` for a half-integer pair.
pub fn offset(j: HalfInt, k: HalfInt) -> usize {
    ((j + k).twice() / 2) as usize
}

/// Largest elementwise gap between `rho` and the diagonal `weights` placed at `start..`.
pub fn diagonal_gap(rho: &DensityMatrix, start: usize, weights: &[f64]) -> f64 {
    let n = rho.dim();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let want = if r == c && r >= start && r - start < weights.len() { weights[r - start] } else { 0.0 };
            worst = worst.max((rho.matrix()[(r, c)].re - want).abs().max(rho.matrix()[(r, c)].im.abs()));
        }
    }
    worst
}

/// Worst oracle gap for the linear case-I start `|J; M>` over the given times.
pub fn linear_case1_gap(j: HalfInt, m0: HalfInt, p: &ModeParams, times: &[f64]) -> Result<f64> {
    let n_max = (j.twice() + 1) as usize;
    let space = TruncatedSpace::linear_linear(p, n_max, DEFAULT_DIM_CAP)?;
    let start = InitialState::Product(offset(j, m0), offset(j, -m0));
    let oracle = OracleEvolution::new(space, &start)?;
    let mut worst = 0.0f64;
    for &t in times {
        let rho = oracle.reduce(t, Subsystem::First)?;
        let analytic = rho1_case1(j, m0, p, t)?;
        worst = worst.max(diagonal_gap(&rho, 0, analytic.weights()));
    }
    Ok(worst)
}

/// Worst oracle gap for the spin-boson block started at `|n1, j>`.
pub fn spin_boson_gap(spec: &BlockSpec, times: &[f64]) -> Result<f64> {
    let j = spec.j();
    let n_max = spec.n1() as usize + j.twice() as usize + 1;
    let space = TruncatedSpace::spin_boson(spec.omega(), spec.kappa(), j, n_max, DEFAULT_DIM_CAP)?;
    let start = InitialState::Product(spec.n1() as usize, j.twice() as usize);
    let oracle = OracleEvolution::new(space, &start)?;
    let block = BlockDynamics::new(*spec)?;
    let mut worst = 0.0f64;
    for &t in times {
        let rho = oracle.reduce(t, Subsystem::Second)?;
        worst = worst.max(diagonal_gap(&rho, 0, block.reduced(t).weights()));
    }
    Ok(worst)
}
