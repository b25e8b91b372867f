//! Equations of motion for `J_z` of the angular-momentum oscillator with each
//! commutator replaced by a flag: 1 keeps the quantum value, 0 the classical one.

use alloc::vec::Vec;

use num_traits::Float;

use crate::spin_boson::{BlockDynamics, BlockSpec};
use crate::{Error, Result};

/// `[A, A^dagger] = lambda1`, `[J_+, J_-] = lambda2 J_z`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaFlags {
    pub lambda1: bool,
    pub lambda2: bool,
}

impl LambdaFlags {
    pub const CLASSICAL: LambdaFlags = LambdaFlags { lambda1: false, lambda2: false };
    pub const QUANTUM: LambdaFlags = LambdaFlags { lambda1: true, lambda2: true };

    pub fn from_ints(lambda1: u8, lambda2: u8) -> Result<Self> {
        let flag = |x: u8| match x {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::InvalidArgument("lambda flags must be 0 or 1")),
        };
        Ok(LambdaFlags { lambda1: flag(lambda1)?, lambda2: flag(lambda2)? })
    }

    pub fn all() -> [LambdaFlags; 4] {
        [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(a, b)| LambdaFlags { lambda1: a == 1, lambda2: b == 1 })
    }

    fn values(self) -> (f64, f64) {
        (f64::from(u8::from(self.lambda1)), f64::from(u8::from(self.lambda2)))
    }
}

/// `kappa^2 {3 J_z^2 - (2E + 2 lambda1 - lambda2) J_z - j (j + lambda2)}`.
pub fn jz_acceleration(jz: f64, flags: LambdaFlags, e: f64, j: f64, kappa: f64) -> f64 {
    let (l1, l2) = flags.values();
    let b = 2.0 * e + 2.0 * l1 - l2;
    kappa * kappa * (jz * (3.0 * jz - b) - j * (j + l2))
}

/// First integral for `(dJ_z/dt)^2` with interaction constant `k`.
pub fn jz_rate_squared(jz: f64, flags: LambdaFlags, e: f64, j: f64, k: f64, kappa: f64) -> f64 {
    let (l1, l2) = flags.values();
    let shifted = e + 0.5 * l1;
    let k2 = kappa * kappa;
    2.0 * k2 * ((jz - shifted) * (jz * jz - (j * (j + l2) - 0.5 * l1 * l2)))
        + shifted * l1 * l2 * k2
        - k * k
}

/// Classical initial data and constants of motion.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ClassicalState {
    pub jz: f64,
    pub jz_dot: f64,
    /// Conserved `n1 + J_z`.
    pub e: f64,
    pub j: f64,
    /// Interaction constant `H_12 / hbar`.
    pub k: f64,
    pub kappa: f64,
}

impl ClassicalState {
    pub fn new(jz: f64, jz_dot: f64, e: f64, j: f64, k: f64, kappa: f64) -> Result<Self> {
        let all = [jz, jz_dot, e, j, k, kappa];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("classical state must be finite"));
        }
        if j <= 0.0 || jz.abs() > j + 1e-9 {
            return Err(Error::InvalidArgument("require j > 0 and |jz| <= j"));
        }
        Ok(ClassicalState { jz, jz_dot, e, j, k, kappa })
    }

    /// Velocity seeded from the non-negative root of the first integral.
    pub fn energy_consistent(jz: f64, e: f64, j: f64, k: f64, kappa: f64) -> Result<Self> {
        let rate2 = jz_rate_squared(jz, LambdaFlags::CLASSICAL, e, j, k, kappa);
        if rate2 < -1e-12 * (kappa * j).powi(2).max(1.0) {
            return Err(Error::InvalidArgument("initial point lies outside the allowed region"));
        }
        Self::new(jz, rate2.max(0.0).sqrt(), e, j, k, kappa)
    }

    fn residual(&self, jz: f64, jz_dot: f64) -> f64 {
        (jz_dot * jz_dot - jz_rate_squared(jz, LambdaFlags::CLASSICAL, self.e, self.j, self.k, self.kappa)).abs()
    }
}

/// Sampled classical trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub jz: Vec<f64>,
    pub jz_dot: Vec<f64>,
    pub first_integral_residual: Vec<f64>,
}

impl Trajectory {
    pub fn max_residual(&self) -> f64 {
        self.first_integral_residual.iter().copied().fold(0.0, f64::max)
    }

    /// Largest `|J_z(t) - J_z(0)|`.
    pub fn max_excursion(&self) -> f64 {
        let start = self.jz[0];
        self.jz.iter().map(|x| (x - start).abs()).fold(0.0, f64::max)
    }

    /// Error if the residual ever exceeds `bound`.
    pub fn check_residual(&self, bound: f64) -> Result<()> {
        let residual = self.max_residual();
        if residual > bound {
            return Err(Error::ResidualExceeded { residual, bound });
        }
        Ok(())
    }
}

/// Default step `1e-3 / kappa`.
pub fn default_dt(kappa: f64) -> f64 {
    if kappa > 0.0 {
        1e-3 / kappa
    } else {
        1e-3
    }
}

/// Classical-branch trajectory by fourth-order Runge-Kutta on `(J_z, dJ_z/dt)`.
pub fn integrate_classical(initial: &ClassicalState, dt: f64, steps: usize) -> Result<Trajectory> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidArgument("time step must be positive"));
    }
    let s = *initial;
    let accel = |x: f64| jz_acceleration(x, LambdaFlags::CLASSICAL, s.e, s.j, s.kappa);
    let mut out = Trajectory {
        times: Vec::with_capacity(steps + 1),
        jz: Vec::with_capacity(steps + 1),
        jz_dot: Vec::with_capacity(steps + 1),
        first_integral_residual: Vec::with_capacity(steps + 1),
    };
    let (mut x, mut v) = (s.jz, s.jz_dot);
    for i in 0..=steps {
        out.times.push(i as f64 * dt);
        out.jz.push(x);
        out.jz_dot.push(v);
        out.first_integral_residual.push(s.residual(x, v));
        if i == steps {
            break;
        }
        let (k1x, k1v) = (v, accel(x));
        let (k2x, k2v) = (v + 0.5 * dt * k1v, accel(x + 0.5 * dt * k1x));
        let (k3x, k3v) = (v + 0.5 * dt * k2v, accel(x + 0.5 * dt * k2x));
        let (k4x, k4v) = (v + dt * k3v, accel(x + dt * k3x));
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum InitialKind {
    /// `n1 = 0`, `J_z = -j`.
    Ground,
    /// `n1 = 0`, `J_z = j`.
    Uppermost,
    Other,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub admissible: bool,
    pub spontaneous_emission: bool,
}

/// Physical admissibility of a flag pair for the given initial state.
pub fn admissibility(flags: LambdaFlags, kind: InitialKind) -> Verdict {
    match kind {
        InitialKind::Ground => Verdict { admissible: flags.lambda1 == flags.lambda2, spontaneous_emission: false },
        InitialKind::Uppermost => Verdict { admissible: true, spontaneous_emission: flags.lambda1 },
        InitialKind::Other => Verdict { admissible: true, spontaneous_emission: false },
    }
}

/// Exact quantum `<J_z>(t)` next to its classical twin started at `J_z = j`, `K = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub classical: Trajectory,
    pub quantum_jz: Vec<f64>,
    /// `<d^2 J_z/dt^2>(0)` by central finite difference.
    pub quantum_acceleration0: f64,
}

pub fn quantum_classical_compare(spec: &BlockSpec, dt: f64, steps: usize) -> Result<Comparison> {
    let j = spec.j().to_f64();
    let e = f64::from(spec.n1()) + j;
    let twin = ClassicalState::new(j, 0.0, e, j, 0.0, spec.kappa())?;
    let classical = integrate_classical(&twin, dt, steps)?;
    let dynamics = BlockDynamics::new(*spec)?;
    let quantum_jz = classical.times.iter().map(|&t| dynamics.jz(t)).collect();
    let h = crate::spin_boson::default_fd_step(spec);
    Ok(Comparison { classical, quantum_jz, quantum_acceleration0: dynamics.jz_second_difference(0.0, h) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::HalfInt;

    #[test]
    fn pole_accelerations() {
        for &j in &[0.5, 1.0, 1.5, 5.0] {
            for flags in LambdaFlags::all() {
                let (l1, l2) = flags.values();
                assert_eq!(jz_acceleration(-j, flags, -j, j, 1.5), 2.0 * 2.25 * (l1 - l2) * j);
                assert_eq!(jz_acceleration(j, flags, j, j, 1.5), -2.0 * 2.25 * l1 * j);
            }
        }
        assert_eq!(jz_acceleration(2.0, LambdaFlags::CLASSICAL, 2.0, 2.0, 1.0), 0.0);
    }

    #[test]
    fn rate_squared_examples() {
        assert_eq!(jz_rate_squared(1.5, LambdaFlags::CLASSICAL, 1.5, 1.5, 0.0, 2.0), 0.0);
        // quantum j = 1/2, n1 = 0: E = 1/2, J^2 = 3/4
        let (jz, k, kappa) = (0.5, 0.0, 1.0);
        let manual = 2.0 * ((jz - 1.0) * (jz * jz - (0.75 - 0.5))) + 1.0 - k * k;
        assert!((jz_rate_squared(jz, LambdaFlags::QUANTUM, 0.5, 0.5, k, kappa) - manual).abs() < 1e-15);
    }

    #[test]
    fn chain_rule_in_classical_branch() {
        let (e, j, k, kappa) = (0.8, 1.5, 0.3, 0.9);
        let h = 1e-5;
        for i in 1..20 {
            let x = -j + 2.0 * j * f64::from(i) / 20.0;
            let f = |y| jz_rate_squared(y, LambdaFlags::CLASSICAL, e, j, k, kappa);
            let derivative = (f(x + h) - f(x - h)) / (2.0 * h);
            assert!((derivative - 2.0 * jz_acceleration(x, LambdaFlags::CLASSICAL, e, j, kappa)).abs() < 1e-9);
        }
    }

    #[test]
    fn equilibria_are_fixed_points() {
        for &j in &[0.5, 1.0, 1.5, 5.0] {
            let top = ClassicalState::new(j, 0.0, j, j, 0.0, 1.0).unwrap();
            let traj = integrate_classical(&top, 1e-3, 100_000).unwrap();
            assert!(traj.max_excursion() < 1e-9);
            let bottom = ClassicalState::new(-j, 0.0, -j, j, 0.0, 1.0).unwrap();
            let traj = integrate_classical(&bottom, 1e-3, 100_000).unwrap();
            assert!(traj.max_excursion() < 1e-9);
        }
    }

    #[test]
    fn perturbed_top_departs_and_conserves() {
        let j = 1.0;
        let start = ClassicalState::new(j - 1e-6, 0.0, j, j, 0.0, 1.0).unwrap();
        let traj = integrate_classical(&start, default_dt(1.0), 20_000).unwrap();
        assert!(traj.jz.windows(2).take(2000).all(|w| w[1] <= w[0]));
        assert!(traj.jz[2000] < traj.jz[0]);
        traj.check_residual(1e-6 * j * j).unwrap();
        let seeded = ClassicalState::energy_consistent(0.2, 0.4, 1.5, 0.3, 1.0).unwrap();
        assert!(seeded.jz_dot >= 0.0);
        let traj = integrate_classical(&seeded, 1e-3, 30_000).unwrap();
        traj.check_residual(1e-6 * 2.25).unwrap();
        assert!(traj.jz.iter().all(|x| x.abs() <= 1.5 + 1e-9));
    }

    #[test]
    fn large_step_is_reported() {
        let start = ClassicalState::energy_consistent(0.2, 0.4, 1.5, 0.3, 1.0).unwrap();
        let traj = integrate_classical(&start, 0.5, 200).unwrap();
        assert!(matches!(traj.check_residual(1e-6), Err(Error::ResidualExceeded { .. })));
    }

    #[test]
    fn admissibility_table() {
        for flags in LambdaFlags::all() {
            let g = admissibility(flags, InitialKind::Ground);
            assert_eq!(g.admissible, flags.lambda1 == flags.lambda2);
            let u = admissibility(flags, InitialKind::Uppermost);
            assert!(u.admissible);
            assert_eq!(u.spontaneous_emission, flags.lambda1);
        }
        assert!(LambdaFlags::from_ints(2, 0).is_err());
    }

    #[test]
    fn comparison_twin() {
        let spec = BlockSpec::new(0, HalfInt::HALF, 1.0, 1.0).unwrap();
        let cmp = quantum_classical_compare(&spec, 1e-2, 300).unwrap();
        assert!(cmp.classical.jz.iter().all(|&x| x == 0.5));
        for (t, q) in cmp.classical.times.iter().zip(&cmp.quantum_jz) {
            let theta = t / 2f64.sqrt();
            assert!((q - 0.5 * (2.0 * theta).cos()).abs() < 1e-12);
        }
        assert!((cmp.quantum_acceleration0 + 1.0).abs() < 1e-4);
    }
}
