use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::block::{build_block, BlockSpec};
use crate::algebra::{eig_hermitian, CMatrix, SpectralDecomposition, StateVector};
use crate::{Error, HalfInt, Result, C64};

/// Diagonal reduced density matrix of the spin, `w[m]` ascending in `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinReducedDensity {
    j: HalfInt,
    weights: Vec<f64>,
}

impl SpinReducedDensity {
    pub fn new(j: HalfInt, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != (j.twice() + 1) as usize {
            return Err(Error::DimensionMismatch { expected: (j.twice() + 1) as usize, found: weights.len() });
        }
        if weights.iter().any(|w| !(*w >= -1e-12)) {
            return Err(Error::InvalidDensity("negative weight"));
        }
        if (weights.iter().sum::<f64>() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidDensity("weights do not sum to one"));
        }
        Ok(SpinReducedDensity { j, weights })
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `1 - sum_m w_m^2`.
    pub fn measure(&self) -> f64 {
        1.0 - self.weights.iter().map(|w| w * w).sum::<f64>()
    }
}

/// `<J_z^order>` for `order <= 3`.
pub fn jz_moments(rho: &SpinReducedDensity, order: u32) -> Result<f64> {
    if order > 3 {
        return Err(Error::InvalidArgument("moment order must be at most 3"));
    }
    Ok(HalfInt::ladder(rho.j)
        .zip(&rho.weights)
        .map(|(m, w)| w * m.to_f64().powi(order as i32))
        .sum())
}

/// Exact evolution within one block from the initial state `|n1, j>`.
#[derive(Clone, Debug)]
pub struct BlockDynamics {
    spec: BlockSpec,
    eig: SpectralDecomposition,
    initial: Vec<C64>,
}

impl BlockDynamics {
    pub fn new(spec: BlockSpec) -> Result<Self> {
        let eig = eig_hermitian(&build_block(&spec))?;
        let psi0 = StateVector::basis(spec.dim(), spec.top_index());
        let initial = eig.coefficients(psi0.amplitudes());
        Ok(BlockDynamics { spec, eig, initial })
    }

    pub fn spec(&self) -> &BlockSpec {
        &self.spec
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.eig
    }

    /// Block amplitudes at time `t`.
    pub fn state(&self, t: f64) -> Vec<C64> {
        self.eig.evolve_coefficients(&self.initial, t)
    }

    /// Block amplitudes with the common diagonal phase removed.
    pub fn interaction_state(&self, t: f64) -> Vec<C64> {
        let shift = Complex64::from_polar(1.0, self.spec.diagonal_energy() * t);
        self.state(t).into_iter().map(|a| a * shift).collect()
    }

    pub fn propagator(&self, t: f64) -> CMatrix {
        self.eig.propagator(t)
    }

    pub fn reduced(&self, t: f64) -> SpinReducedDensity {
        let mut weights: Vec<f64> = self.state(t).iter().map(|a| a.norm_sqr()).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        SpinReducedDensity { j: self.spec.j(), weights }
    }

    pub fn measure(&self, t: f64) -> f64 {
        self.reduced(t).measure()
    }

    pub fn jz(&self, t: f64) -> f64 {
        jz_moments(&self.reduced(t), 1).expect("order 1 is supported")
    }

    /// Central second difference of `<J_z>` with step `h`.
    pub fn jz_second_difference(&self, t: f64, h: f64) -> f64 {
        (self.jz(t + h) - 2.0 * self.jz(t) + self.jz(t - h)) / (h * h)
    }
}

pub fn evolve_and_reduce(spec: &BlockSpec, t: f64) -> Result<SpinReducedDensity> {
    Ok(BlockDynamics::new(*spec)?.reduced(t))
}

pub fn measure_spin(spec: &BlockSpec, t: f64) -> Result<f64> {
    Ok(BlockDynamics::new(*spec)?.measure(t))
}

/// Default finite-difference step for `<J_z>` second derivatives.
pub fn default_fd_step(spec: &BlockSpec) -> f64 {
    if spec.kappa() > 0.0 {
        1e-4 / spec.kappa()
    } else {
        1e-4
    }
}

/// `<d^2 J_z / dt^2>`: closed form `-2 (n1 + 1) kappa^2 <J_z>` for `j = 1/2`,
/// a second finite difference of the exact `<J_z>(t)` otherwise.
pub fn jz_acceleration_expectation(spec: &BlockSpec, t: f64) -> Result<f64> {
    let dynamics = BlockDynamics::new(*spec)?;
    if spec.j() == HalfInt::HALF {
        let k = spec.kappa();
        return Ok(-2.0 * (f64::from(spec.n1()) + 1.0) * k * k * dynamics.jz(t));
    }
    Ok(dynamics.jz_second_difference(t, default_fd_step(spec)))
}

/// Interaction-picture state at small `t`, in the block basis.
pub fn early_time_expansion(spec: &BlockSpec, t: f64) -> Result<StateVector> {
    StateVector::new(BlockDynamics::new(*spec)?.interaction_state(t))
}

/// Interaction-picture amplitude of `|n1 + 1>|j, j - 1>` at time `t`.
pub fn emission_amplitude(spec: &BlockSpec, t: f64) -> Result<C64> {
    let state = early_time_expansion(spec, t)?;
    Ok(state.amplitudes()[spec.top_index() - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_4;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn spin_half_theta(n1: u32, kappa: f64, t: f64) -> f64 {
        kappa * t * (f64::from(n1) + 1.0).sqrt() / 2f64.sqrt()
    }

    #[test]
    fn spin_half_weights_and_moments() {
        for n1 in [0u32, 20] {
            let s = BlockSpec::new(n1, h(1), 0.9, 1.3).unwrap();
            let d = BlockDynamics::new(s).unwrap();
            for &t in &[0.0, 0.3, 1.7, 6.0] {
                let th = spin_half_theta(n1, 0.9, t);
                let rho = d.reduced(t);
                assert!((rho.weights()[0] - th.sin().powi(2)).abs() < 1e-12);
                assert!((rho.weights()[1] - th.cos().powi(2)).abs() < 1e-12);
                assert!((jz_moments(&rho, 1).unwrap() - 0.5 * (2.0 * th).cos()).abs() < 1e-12);
                assert!((jz_moments(&rho, 2).unwrap() - 0.25).abs() < 1e-12);
                assert!((jz_moments(&rho, 3).unwrap() - 0.125 * (2.0 * th).cos()).abs() < 1e-12);
            }
            let t = FRAC_PI_4 / spin_half_theta(n1, 0.9, 1.0);
            assert!((d.measure(t) - 0.5).abs() < 1e-12);
        }
        let rho = evolve_and_reduce(&BlockSpec::new(0, h(1), 1.0, 1.0).unwrap(), 0.0).unwrap();
        assert!(jz_moments(&rho, 4).is_err());
        assert_eq!(jz_moments(&rho, 1).unwrap(), 0.5);
    }

    #[test]
    fn spin_one_closed_form_weights() {
        for n1 in [0u32, 4, 20] {
            let (k, x) = (0.8, f64::from(n1));
            let s = BlockSpec::new(n1, h(2), k, 1.0).unwrap();
            let d = BlockDynamics::new(s).unwrap();
            for &t in &[0.0, 0.2, 1.1, 3.7] {
                let b = (2.0 * x + 3.0).sqrt() * k;
                let den = (2.0 * x + 3.0).powi(2);
                let w_minus = 4.0 * (x + 1.0) * (x + 2.0) * (b * t / 2.0).sin().powi(4) / den;
                let w_zero = (x + 1.0) * (2.0 * x + 3.0) * (b * t).sin().powi(2) / den;
                let w_plus = (2.0 * (x + 1.0) * (b * t / 2.0).cos().powi(2) + 1.0).powi(2) / den;
                let w = d.reduced(t);
                assert!((w.weights()[0] - w_minus).abs() < 1e-12);
                assert!((w.weights()[1] - w_zero).abs() < 1e-12);
                assert!((w.weights()[2] - w_plus).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn acceleration_closed_form_matches_difference() {
        for n1 in [0u32, 3] {
            let s = BlockSpec::new(n1, h(1), 1.2, 1.0).unwrap();
            let d = BlockDynamics::new(s).unwrap();
            for &t in &[0.0, 0.4, 2.1] {
                let closed = jz_acceleration_expectation(&s, t).unwrap();
                let fd = d.jz_second_difference(t, default_fd_step(&s));
                assert!((closed - fd).abs() < 1e-6 * 1.44);
            }
        }
        let s = BlockSpec::new(0, h(1), 1.0, 1.0).unwrap();
        assert!((jz_acceleration_expectation(&s, 0.0).unwrap() + 1.0).abs() < 1e-12);
        let s = BlockSpec::new(0, h(2), 1.0, 1.0).unwrap();
        assert!((jz_acceleration_expectation(&s, 0.0).unwrap() + 2.0).abs() < 1e-4);
    }

    #[test]
    fn early_time_amplitude() {
        for twice in [1, 2, 4, 20] {
            let s = BlockSpec::new(0, h(twice), 1.0, 1.0).unwrap();
            let t = 1e-3;
            let amp = emission_amplitude(&s, t).unwrap();
            let linear = C64::new(0.0, -t * (f64::from(twice) / 2.0).sqrt());
            assert!((amp - linear).norm() < 5e-7, "j={twice}/2: {amp}");
            let psi0 = early_time_expansion(&s, 0.0).unwrap();
            assert!((psi0.amplitudes()[s.top_index()] - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn weights_normalized() {
        for twice in 1..=8 {
            let s = BlockSpec::new(7, h(twice), 0.5, 2.0).unwrap();
            let d = BlockDynamics::new(s).unwrap();
            for i in 0..20 {
                let w = d.reduced(0.37 * f64::from(i));
                assert!((w.weights().iter().sum::<f64>() - 1.0).abs() < 1e-10);
                let bound = f64::from(twice) / f64::from(twice + 1);
                assert!(w.measure() <= bound + 1e-10);
            }
        }
    }

    #[test]
    fn reduced_density_validation() {
        assert!(SpinReducedDensity::new(h(1), alloc::vec![0.5, 0.5]).is_ok());
        assert!(SpinReducedDensity::new(h(1), alloc::vec![0.6, 0.5]).is_err());
        assert!(SpinReducedDensity::new(h(1), alloc::vec![1.0]).is_err());
    }
}
