//! Quick invariant suite behind `entangle selftest`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use entangle_core::algebra::{eig_hermitian, Subsystem};
use entangle_core::coupled_boson::{
    derive_params, f1_all, measure_case1, rho1_case1, rho1_case2, wigner_matrix, ModeParams,
};
use entangle_core::heisenberg::{integrate_classical, ClassicalState};
use entangle_core::oracle::{InitialState, OracleEvolution, TruncatedSpace, DEFAULT_DIM_CAP};
use entangle_core::spin_boson::{build_block, closed_form_spectrum, period_detect, BlockDynamics, BlockSpec};
use entangle_core::su_n::{euler_diagonalize_check_j1, generators};
use entangle_core::{HalfInt, C64};

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

type Check = fn() -> Result<String, String>;

fn bounded(name: &str, value: f64, bound: f64) -> Result<String, String> {
    all_bounded(&[(name, value, bound)])
}

fn all_bounded(items: &[(&str, f64, f64)]) -> Result<String, String> {
    let line: Vec<String> = items.iter().map(|(n, v, b)| format!("{n} {v:e} (bound {b:e})")).collect();
    if items.iter().all(|(_, v, b)| v <= b) {
        Ok(line.join(", "))
    } else {
        Err(line.join(", "))
    }
}

fn s(e: entangle_core::Error) -> String {
    e.to_string()
}

fn wigner_orthogonality() -> Result<String, String> {
    let mut worst = 0.0f64;
    for twice in 0..=40 {
        for gamma in [0.0, PI / 6.0, FRAC_PI_4, FRAC_PI_2, 2.3] {
            worst = worst.max(wigner_matrix(HalfInt::from_twice(twice), gamma).map_err(s)?.orthogonality_defect());
        }
    }
    bounded("max |U^T U - I|", worst, 1e-10)
}

fn linear_normalization_and_period() -> Result<String, String> {
    let (mut norm, mut period) = (0.0f64, 0.0f64);
    for (omega1, omega2, kappa) in [(1.0, 1.0, 1.0), (3.0, 1.0, 1.0), (2.2, 0.7, 0.4)] {
        let p = derive_params(omega1, omega2, kappa).map_err(s)?;
        for twice in 1..=10 {
            let j = HalfInt::from_twice(twice);
            for m in HalfInt::ladder(j) {
                for t in [0.0, 0.37, 1.9, 7.3] {
                    let f = f1_all(j, m, p.gamma, p.omega_bar, t).map_err(s)?;
                    norm = norm.max((f.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs());
                    let a = measure_case1(j, m, &p, t).map_err(s)?;
                    let b = measure_case1(j, m, &p, t + 2.0 * PI / p.omega_bar).map_err(s)?;
                    period = period.max((a - b).abs());
                }
            }
        }
    }
    all_bounded(&[("normalization gap", norm, 1e-10), ("periodicity gap", period, 1e-9)])
}

fn case_two_binomial() -> Result<String, String> {
    let mut worst = 0.0f64;
    for gamma in [FRAC_PI_4, FRAC_PI_2] {
        let j = HalfInt::integer(10);
        let rho = rho1_case2(j, j, gamma).map_err(s)?;
        let q = (gamma / 2.0).cos().powi(2);
        let mut pmf = (1.0 - q).powi(20);
        for (k, w) in rho.weights().iter().enumerate() {
            worst = worst.max((w - pmf).abs());
            pmf *= (20 - k) as f64 / (k + 1) as f64 * q / (1.0 - q);
        }
    }
    bounded("binomial gap", worst, 1e-10)
}

fn linear_oracle() -> Result<String, String> {
    let mut worst = 0.0f64;
    for gamma in [FRAC_PI_4, FRAC_PI_2] {
        let p = ModeParams::with_gamma(1.0, 0.7, gamma).map_err(s)?;
        for twice in 1..=4 {
            let j = HalfInt::from_twice(twice);
            let space = TruncatedSpace::linear_linear(&p, twice as usize + 1, DEFAULT_DIM_CAP).map_err(s)?;
            let oracle = OracleEvolution::new(space, &InitialState::Product(twice as usize, 0)).map_err(s)?;
            for t in [0.3, 1.7, 4.1] {
                let rho = oracle.reduce(t, Subsystem::First).map_err(s)?;
                let w = rho1_case1(j, j, &p, t).map_err(s)?;
                for (n, want) in w.weights().iter().enumerate() {
                    worst = worst.max((rho.matrix()[(n, n)] - C64::new(*want, 0.0)).norm());
                }
                worst = worst.max(rho.max_coherence());
            }
        }
    }
    bounded("oracle gap", worst, 1e-9)
}

fn spin_boson_spectra() -> Result<String, String> {
    let mut worst = 0.0f64;
    for twice in 1..=3 {
        for n1 in [0, 1, 5, 20] {
            let spec = BlockSpec::new(n1, HalfInt::from_twice(twice), 0.8, 1.0).map_err(s)?;
            let numeric = eig_hermitian(&build_block(&spec)).map_err(s)?;
            let closed = closed_form_spectrum(&spec).map_err(s)?;
            for (a, b) in numeric.eigenvalues().iter().zip(&closed.eigenvalues) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    bounded("closed-form spectrum gap", worst, 1e-10)
}

fn spin_boson_periods() -> Result<String, String> {
    let one = BlockSpec::new(0, HalfInt::ONE, 1.0, 1.0).map_err(s)?;
    let expected = 2.0 * PI / 3f64.sqrt();
    let found = period_detect(&one, 3.0 * expected, 1e-8).map_err(s)?.ok_or("no j=1 period")?;
    let three_halves = BlockSpec::new(0, HalfInt::from_twice(3), 1.0, 1.0).map_err(s)?;
    if period_detect(&three_halves, 200.0, 1e-8).map_err(s)?.is_some() {
        return Err("j=3/2 block reported periodic".into());
    }
    bounded("j=1 period gap", (found - expected).abs(), 1e-6)
}

fn spin_boson_normalization() -> Result<String, String> {
    let mut worst = 0.0f64;
    for twice in 1..=6 {
        let spec = BlockSpec::new(3, HalfInt::from_twice(twice), 1.1, 1.0).map_err(s)?;
        let dynamics = BlockDynamics::new(spec).map_err(s)?;
        for t in [0.0, 0.5, 3.3, 17.0] {
            worst = worst.max((dynamics.reduced(t).weights().iter().sum::<f64>() - 1.0).abs());
        }
    }
    bounded("trace deviation", worst, 1e-10)
}

fn su_n_orthonormality() -> Result<String, String> {
    let mut worst = 0.0f64;
    for n in 2..=5 {
        let gens = generators(n).map_err(s)?;
        if gens.len() != n * n - 1 {
            return Err(format!("{} generators for n = {n}", gens.len()));
        }
        for (p, a) in gens.lambdas().iter().enumerate() {
            worst = worst.max(a.matrix().trace().norm());
            for (q, b) in gens.lambdas().iter().enumerate() {
                let want = if p == q { 2.0 } else { 0.0 };
                worst = worst.max((a.matrix().matmul(b.matrix()).trace().re - want).abs());
            }
        }
    }
    let mut euler = 0.0f64;
    for n1 in [0, 20] {
        euler = euler.max(euler_diagonalize_check_j1(n1, 1.0, 1.0).map_err(s)?);
    }
    all_bounded(&[("trace gap", worst, 1e-12), ("Euler residual", euler, 1e-9)])
}

fn classical_conservation() -> Result<String, String> {
    let (mut drift, mut residual) = (0.0f64, 0.0f64);
    for j in [0.5, 1.5, 5.0] {
        let rest = ClassicalState::new(j, 0.0, j, j, 0.0, 1.0).map_err(s)?;
        drift = drift.max(integrate_classical(&rest, 1e-3, 100_000).map_err(s)?.max_excursion());
        let moving = ClassicalState::energy_consistent(0.5 * j, 2.0 + 0.5 * j, j, 0.1, 1.0).map_err(s)?;
        let traj = integrate_classical(&moving, 1e-3, 20_000).map_err(s)?;
        residual = residual.max(traj.max_residual() / (j * j));
    }
    all_bounded(&[("equilibrium drift", drift, 1e-9), ("residual / j^2", residual, 1e-6)])
}

pub const CHECKS: &[(&str, Check)] = &[
    ("rotation matrices orthogonal", wigner_orthogonality),
    ("linear case I normalized and periodic", linear_normalization_and_period),
    ("linear case II binomial weights", case_two_binomial),
    ("linear case I matches oracle", linear_oracle),
    ("spin-boson closed-form spectra", spin_boson_spectra),
    ("spin-boson periodicity", spin_boson_periods),
    ("spin-boson normalization", spin_boson_normalization),
    ("SU(n) generators and Euler check", su_n_orthonormality),
    ("classical first integral", classical_conservation),
];

pub fn selftest() -> Vec<CheckResult> {
    CHECKS.iter().map(|(name, check)| CheckResult { name, outcome: check() }).collect()
}
