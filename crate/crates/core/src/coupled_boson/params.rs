use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use num_traits::Float;

use crate::{Error, Result, C64};

/// Frequencies and coupling of the two linear oscillators plus the derived
/// normal-mode quantities.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ModeParams {
    pub omega1: f64,
    pub omega2: f64,
    pub kappa: f64,
    /// Mixing angle, `tan(gamma) = 2 kappa / (omega1 - omega2)`.
    pub gamma: f64,
    /// Normal-mode splitting `omega1p - omega2p`.
    pub omega_bar: f64,
    pub omega1p: f64,
    pub omega2p: f64,
}

/// Which of the two original oscillators.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    First,
    Second,
}

fn validate(omega1: f64, omega2: f64, kappa: f64) -> Result<()> {
    if !(omega1.is_finite() && omega2.is_finite() && kappa.is_finite()) {
        return Err(Error::InvalidArgument("frequencies and coupling must be finite"));
    }
    if omega2 < 0.0 || omega1 < omega2 {
        return Err(Error::InvalidArgument("require omega1 >= omega2 >= 0"));
    }
    if kappa < 0.0 {
        return Err(Error::InvalidArgument("coupling must be non-negative"));
    }
    Ok(())
}

fn assemble(omega1: f64, omega2: f64, kappa: f64, gamma: f64, omega_bar: f64) -> ModeParams {
    let mean = 0.5 * (omega1 + omega2);
    ModeParams {
        omega1,
        omega2,
        kappa,
        gamma,
        omega_bar,
        omega1p: mean + 0.5 * omega_bar,
        omega2p: mean - 0.5 * omega_bar,
    }
}

/// Normal-mode parameters for `omega1 >= omega2 >= 0`, `kappa >= 0`.
pub fn derive_params(omega1: f64, omega2: f64, kappa: f64) -> Result<ModeParams> {
    validate(omega1, omega2, kappa)?;
    let delta = omega1 - omega2;
    if delta == 0.0 && kappa == 0.0 {
        return Err(Error::DegenerateModes);
    }
    let gamma = (2.0 * kappa).atan2(delta);
    let omega_bar = (2.0 * kappa).hypot(delta);
    Ok(assemble(omega1, omega2, kappa, gamma, omega_bar))
}

impl ModeParams {
    /// Parameters with a prescribed mixing angle: `omega1` is set to
    /// `omega2 + 2 kappa cot(gamma)` and `gamma` is kept exactly.
    pub fn with_gamma(omega2: f64, kappa: f64, gamma: f64) -> Result<ModeParams> {
        if !(gamma > 0.0 && gamma <= FRAC_PI_2) {
            return Err(Error::InvalidArgument("gamma override must lie in (0, pi/2]"));
        }
        if !(kappa > 0.0) {
            return Err(Error::InvalidArgument("gamma override needs a positive coupling"));
        }
        let delta = if gamma == FRAC_PI_2 { 0.0 } else { 2.0 * kappa / gamma.tan() };
        validate(omega2 + delta, omega2, kappa)?;
        Ok(assemble(omega2 + delta, omega2, kappa, gamma, (2.0 * kappa).hypot(delta)))
    }
}

/// `E_{n1,n2} = (n1 + n2 + 1)(omega1 + omega2)/2 + (n1 - n2) omega_bar / 2`.
pub fn energy_eigenvalue(n1: u32, n2: u32, p: &ModeParams) -> f64 {
    let (n1, n2) = (f64::from(n1), f64::from(n2));
    0.5 * (n1 + n2 + 1.0) * (p.omega1 + p.omega2) + 0.5 * (n1 - n2) * p.omega_bar
}

/// Coefficients of `a_nu(t) = c_self a_nu + c_cross a_mu` in the Heisenberg picture.
pub fn heisenberg_coeffs(p: &ModeParams, mode: Mode, t: f64) -> (C64, C64) {
    let (c2, s2) = ((p.gamma / 2.0).cos().powi(2), (p.gamma / 2.0).sin().powi(2));
    let e1 = Complex64::from_polar(1.0, -p.omega1p * t);
    let e2 = Complex64::from_polar(1.0, -p.omega2p * t);
    let cross = (e1 - e2) * (0.5 * p.gamma.sin());
    match mode {
        Mode::First => (e1 * c2 + e2 * s2, cross),
        Mode::Second => (e2 * c2 + e1 * s2, cross),
    }
}
