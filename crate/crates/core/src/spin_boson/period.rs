use core::f64::consts::PI;

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::block::BlockSpec;
use super::dynamics::BlockDynamics;
use crate::Result;

/// Default acceptance threshold for period candidates.
pub const DEFAULT_PERIOD_TOL: f64 = 1e-8;

/// Grid points per fastest phase cycle.
const SAMPLES_PER_CYCLE: f64 = 64.0;

/// Probe times used to compare `M(t + T)` against `M(t)`.
const MEASURE_PROBES: usize = 16;

/// Smallest detected periods of the propagator (up to a global phase) and of
/// the entanglement measure; the latter may be shorter.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PeriodReport {
    pub propagator: Option<f64>,
    pub measure: Option<f64>,
}

/// `max_pq |U(t) - e^{i phi} I|_pq` with `phi = arg Tr U(t)`.
pub fn propagator_distance(dynamics: &BlockDynamics, t: f64) -> f64 {
    let u = dynamics.propagator(t);
    let phase = Complex64::from_polar(1.0, u.trace().arg());
    let n = u.dim();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let target = if r == c { phase } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((u[(r, c)] - target).norm());
        }
    }
    worst
}

fn spread(dynamics: &BlockDynamics) -> f64 {
    let e = dynamics.spectrum().eigenvalues();
    e[e.len() - 1] - e[0]
}

/// First `t` in `(0, t_max]` where the propagator equals a phase times the identity within `tol`.
pub fn period_detect(spec: &BlockSpec, t_max: f64, tol: f64) -> Result<Option<f64>> {
    let dynamics = BlockDynamics::new(*spec)?;
    let width = spread(&dynamics);
    if width <= 0.0 {
        return Ok(None);
    }
    let step = 2.0 * PI / (SAMPLES_PER_CYCLE * width);
    Ok(first_zero(|t| propagator_distance(&dynamics, t), t_max, step, tol))
}

/// First `T` in `(0, t_max]` with `|M(t + T) - M(t)| < tol` at every probe time.
pub fn measure_period(spec: &BlockSpec, t_max: f64, tol: f64) -> Result<Option<f64>> {
    let dynamics = BlockDynamics::new(*spec)?;
    let width = spread(&dynamics);
    if width <= 0.0 {
        return Ok(None);
    }
    let cycle = 2.0 * PI / width;
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let probes: Vec<(f64, f64)> = (0..MEASURE_PROBES)
        .map(|i| {
            let t = i as f64 * golden * cycle;
            (t, dynamics.measure(t))
        })
        .collect();
    let mismatch = |period: f64| {
        probes
            .iter()
            .map(|&(t, m)| (dynamics.measure(t + period) - m).abs())
            .fold(0.0, f64::max)
    };
    Ok(first_zero(mismatch, t_max, cycle / SAMPLES_PER_CYCLE, tol))
}

pub fn periodicity(spec: &BlockSpec, t_max: f64, tol: f64) -> Result<PeriodReport> {
    Ok(PeriodReport {
        propagator: period_detect(spec, t_max, tol)?,
        measure: measure_period(spec, t_max, tol)?,
    })
}

/// Scan `f >= 0` on a uniform grid, refine interior local minima by golden
/// section, and return the first refined point with `f < tol`.
fn first_zero(f: impl Fn(f64) -> f64, t_max: f64, step: f64, tol: f64) -> Option<f64> {
    let count = (t_max / step).ceil() as usize + 1;
    let mut prev = (0.0, f(0.0));
    let mut cur = (step, f(step));
    for i in 2..=count + 1 {
        let next_t = i as f64 * step;
        let next = (next_t, f(next_t));
        if cur.1 <= prev.1 && cur.1 <= next.1 {
            let t = golden_section(&f, prev.0, next.0);
            if t <= t_max && f(t) < tol {
                return Some(t);
            }
        }
        prev = cur;
        cur = next;
    }
    None
}

fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a <= 4.0 * f64::EPSILON * b.abs() {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}
