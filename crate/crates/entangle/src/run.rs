use std::collections::BTreeMap;
use std::f64::consts::PI;

use entangle_core::coupled_boson::{rho1_case1, rho1_case2, DiagonalReducedDensity};
use entangle_core::heisenberg::{
    admissibility, integrate_classical, quantum_classical_compare, InitialKind, LambdaFlags, Trajectory,
};
use entangle_core::spin_boson::{jz_moments, period_detect, BlockDynamics, BlockSpec, DEFAULT_PERIOD_TOL};
use entangle_core::{CLOSED_FORM_TOL, CONSTRUCTION_TOL};
use serde::Serialize;
use serde_json::Value;

use crate::config::{Scenario, ScenarioConfig, TimeGrid};
use crate::error::CliError;

/// Sampled observables, one row per time point.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl TimeSeries {
    fn new(columns: Vec<&'static str>) -> Self {
        TimeSeries { columns, rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Shortest round-trip floats, `,` separated, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub ok: bool,
}

impl InvariantCheck {
    fn at_most(name: &'static str, value: f64, bound: f64) -> Self {
        InvariantCheck { name, value, bound, ok: value <= bound }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub admissible: bool,
    pub spontaneous_emission: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub version: &'static str,
    pub config: BTreeMap<String, String>,
    pub tolerances: BTreeMap<&'static str, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub scenario: &'static str,
    pub max_measure: Option<f64>,
    /// A number, `"aperiodic(<bound>)"`, `"stationary"` or null.
    pub period: Value,
    pub admissibility: Option<BTreeMap<&'static str, VerdictReport>>,
    pub invariant_report: Vec<InvariantCheck>,
    pub metadata: Metadata,
}

impl Summary {
    pub fn violations(&self) -> Vec<&InvariantCheck> {
        self.invariant_report.iter().filter(|c| !c.ok).collect()
    }

    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub series: TimeSeries,
    pub summary: Summary,
}

impl RunOutput {
    /// `Err` naming the failed checks, if any.
    pub fn check(&self) -> Result<(), CliError> {
        let bad = self.summary.violations();
        if bad.is_empty() {
            return Ok(());
        }
        let names: Vec<String> = bad.iter().map(|c| format!("{} = {:e} > {:e}", c.name, c.value, c.bound)).collect();
        Err(CliError::Invariant(names.join("; ")))
    }
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

struct Tracker {
    normalization: f64,
    negativity: f64,
    measure_excess: f64,
}

impl Tracker {
    fn new() -> Self {
        Tracker { normalization: 0.0, negativity: 0.0, measure_excess: f64::NEG_INFINITY }
    }

    fn weights(&mut self, w: &[f64], measure: f64, measure_bound: f64) {
        self.normalization = self.normalization.max((w.iter().sum::<f64>() - 1.0).abs());
        self.negativity = self.negativity.max(max_of(w.iter().map(|x| -x)).max(0.0));
        self.measure_excess = self.measure_excess.max(measure - measure_bound).max(-measure);
    }

    fn report(&self) -> Vec<InvariantCheck> {
        vec![
            InvariantCheck::at_most("trace_deviation", self.normalization, CONSTRUCTION_TOL),
            InvariantCheck::at_most("negative_weight", self.negativity, 1e-12),
            InvariantCheck::at_most("measure_out_of_range", self.measure_excess.max(0.0), CLOSED_FORM_TOL),
        ]
    }
}

fn linear_series(
    grid: &TimeGrid,
    j: f64,
    mut at: impl FnMut(f64) -> Result<DiagonalReducedDensity, CliError>,
) -> Result<(TimeSeries, Vec<InvariantCheck>), CliError> {
    let mut series = TimeSeries::new(vec!["t", "measure", "n1_mean"]);
    let mut tracker = Tracker::new();
    let bound = 2.0 * j / (2.0 * j + 1.0);
    for t in grid.times() {
        let rho = at(t)?;
        let measure = rho.measure();
        let mean: f64 = rho.weights().iter().enumerate().map(|(n, w)| n as f64 * w).sum();
        tracker.weights(rho.weights(), measure, bound);
        series.rows.push(vec![t, measure, mean]);
    }
    Ok((series, tracker.report()))
}

fn spin_series(grid: &TimeGrid, spec: &BlockSpec) -> Result<(TimeSeries, Vec<InvariantCheck>), CliError> {
    let dynamics = BlockDynamics::new(*spec)?;
    let mut series = TimeSeries::new(vec!["t", "measure", "jz", "jz2"]);
    let mut tracker = Tracker::new();
    let dim = spec.j().twice() as f64 + 1.0;
    let mut jz_excess = 0.0f64;
    for t in grid.times() {
        let rho = dynamics.reduced(t);
        let measure = rho.measure();
        tracker.weights(rho.weights(), measure, 1.0 - 1.0 / dim);
        let jz = jz_moments(&rho, 1)?;
        let jz2 = jz_moments(&rho, 2)?;
        jz_excess = jz_excess.max(jz.abs() - spec.j().to_f64());
        series.rows.push(vec![t, measure, jz, jz2]);
    }
    let mut report = tracker.report();
    report.push(InvariantCheck::at_most("jz_out_of_range", jz_excess.max(0.0), CLOSED_FORM_TOL));
    Ok((series, report))
}

fn residual_check(traj: &Trajectory, j: f64, kappa: f64) -> Vec<InvariantCheck> {
    let mut report = vec![InvariantCheck::at_most(
        "first_integral_residual",
        traj.max_residual(),
        1e-6 * kappa * kappa * j * j,
    )];
    let excess = (max_of(traj.jz.iter().map(|x| x.abs())) - j).max(0.0);
    report.push(InvariantCheck::at_most("jz_out_of_range", excess, 1e-9));
    report
}

fn spin_period(spec: &BlockSpec, grid: &TimeGrid) -> Result<Value, CliError> {
    Ok(match period_detect(spec, grid.t1, DEFAULT_PERIOD_TOL)? {
        Some(t) => Value::from(t),
        None => Value::from(format!("aperiodic({:?})", grid.t1)),
    })
}

fn verdicts(flags: LambdaFlags) -> BTreeMap<&'static str, VerdictReport> {
    [("ground", InitialKind::Ground), ("uppermost", InitialKind::Uppermost)]
        .into_iter()
        .map(|(name, kind)| {
            let v = admissibility(flags, kind);
            (name, VerdictReport { admissible: v.admissible, spontaneous_emission: v.spontaneous_emission })
        })
        .collect()
}

/// Evaluate a scenario. Invariant violations are recorded in the summary,
/// not returned as errors; see [`RunOutput::check`].
pub fn run(config: &ScenarioConfig) -> Result<RunOutput, CliError> {
    let grid = &config.grid;
    let (series, invariant_report, period) = match config.scenario {
        Scenario::LinearCase1 { params, j, m } => {
            let (s, r) = linear_series(grid, j.to_f64(), |t| Ok(rho1_case1(j, m, &params, t)?))?;
            (s, r, Value::from(2.0 * PI / params.omega_bar))
        }
        Scenario::LinearCase2 { params, j, m } => {
            let rho = rho1_case2(j, m, params.gamma)?;
            let (s, r) = linear_series(grid, j.to_f64(), |_| Ok(rho.clone()))?;
            (s, r, Value::from("stationary"))
        }
        Scenario::SpinBoson { spec } => {
            let (s, r) = spin_series(grid, &spec)?;
            (s, r, spin_period(&spec, grid)?)
        }
        Scenario::Classical { state } => {
            let traj = integrate_classical(&state, grid.dt(), grid.steps - 1)?;
            let mut s = TimeSeries::new(vec!["t", "jz", "jz_dot", "residual"]);
            for (i, t) in grid.times().enumerate() {
                s.rows.push(vec![t, traj.jz[i], traj.jz_dot[i], traj.first_integral_residual[i]]);
            }
            (s, residual_check(&traj, state.j, state.kappa), Value::Null)
        }
        Scenario::Compare { spec } => {
            let cmp = quantum_classical_compare(&spec, grid.dt(), grid.steps - 1)?;
            let (quantum, mut r) = spin_series(grid, &spec)?;
            let mut s = TimeSeries::new(vec!["t", "measure", "jz", "jz_classical"]);
            for (i, row) in quantum.rows.iter().enumerate() {
                s.rows.push(vec![row[0], row[1], cmp.quantum_jz[i], cmp.classical.jz[i]]);
            }
            r.extend(residual_check(&cmp.classical, spec.j().to_f64(), spec.kappa()));
            (s, r, spin_period(&spec, grid)?)
        }
    };

    let max_measure = series.column("measure").map(max_of);
    let summary = Summary {
        scenario: config.scenario.kind().name(),
        max_measure,
        period,
        admissibility: config.flags.map(verdicts),
        invariant_report,
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION"),
            config: config.echo.clone(),
            tolerances: BTreeMap::from([
                ("construction", CONSTRUCTION_TOL),
                ("closed_form", CLOSED_FORM_TOL),
                ("period", DEFAULT_PERIOD_TOL),
            ]),
        },
    };
    Ok(RunOutput { series, summary })
}
