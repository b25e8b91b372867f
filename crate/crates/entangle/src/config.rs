//! Flat `key=value` scenario files.
//!
//! ```text
//! # three quanta in the first mode
//! scenario = linear-case1
//! omega1 = 1
//! omega2 = 1
//! kappa = 1
//! N1 = 3
//! N2 = 0
//! t1 = 10
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Keys are case
//! sensitive (`N1` is a linear-oscillator occupation, `n1` the photon number
//! of the spin-boson block).

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use entangle_core::coupled_boson::{derive_params, ModeParams};
use entangle_core::heisenberg::{ClassicalState, LambdaFlags};
use entangle_core::spin_boson::BlockSpec;
use entangle_core::HalfInt;

use crate::error::ConfigError;

pub const KNOWN_KEYS: &[&str] = &[
    "scenario",
    "omega1",
    "omega2",
    "kappa",
    "N1",
    "N2",
    "n1",
    "j",
    "jz0",
    "jz_dot0",
    "K",
    "lambda1",
    "lambda2",
    "gamma_override",
    "t0",
    "t1",
    "steps",
    "output",
];

pub const DEFAULT_STEPS: usize = 2001;

/// Raw key/value pairs, sorted by key.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawConfig(BTreeMap<String, String>);

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax { line: i + 1, text: line.to_owned() });
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(ConfigError::Syntax { line: i + 1, text: line.to_owned() });
            }
            if !KNOWN_KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey(key.to_owned()));
            }
            if map.insert(key.to_owned(), value.to_owned()).is_some() {
                return Err(ConfigError::Duplicate { line: i + 1, key: key.to_owned() });
            }
        }
        Ok(RawConfig(map))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.to_owned(), source })?;
        Self::parse(&text)
    }

    /// Apply a `key=value` override; later overrides win.
    pub fn set(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let Some((key, value)) = assignment.split_once('=') else {
            return Err(ConfigError::Syntax { line: 0, text: assignment.to_owned() });
        };
        self.insert(key.trim(), value.trim())
    }

    pub fn insert(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey(key.to_owned()));
        }
        self.0.insert(key.to_owned(), value.to_owned());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.0
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    LinearCase1,
    LinearCase2,
    SpinBoson,
    Classical,
    Compare,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::LinearCase1 => "linear-case1",
            ScenarioKind::LinearCase2 => "linear-case2",
            ScenarioKind::SpinBoson => "spinboson",
            ScenarioKind::Classical => "classical",
            ScenarioKind::Compare => "compare",
        }
    }

    fn fields(self) -> &'static [&'static str] {
        match self {
            ScenarioKind::LinearCase1 | ScenarioKind::LinearCase2 => {
                &["omega1", "omega2", "kappa", "N1", "N2", "gamma_override"]
            }
            ScenarioKind::SpinBoson | ScenarioKind::Compare => &["omega1", "omega2", "kappa", "n1", "j"],
            ScenarioKind::Classical => &["kappa", "n1", "j", "jz0", "jz_dot0", "K"],
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Ok(match s {
            "linear-case1" => ScenarioKind::LinearCase1,
            "linear-case2" => ScenarioKind::LinearCase2,
            "spinboson" => ScenarioKind::SpinBoson,
            "classical" => ScenarioKind::Classical,
            "compare" => ScenarioKind::Compare,
            _ => {
                return Err(ConfigError::invalid(
                    "scenario",
                    format!("unknown scenario {s:?} (expected linear-case1, linear-case2, spinboson, classical or compare)"),
                ))
            }
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct TimeGrid {
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn dt(&self) -> f64 {
        (self.t1 - self.t0) / (self.steps - 1) as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(move |i| if i + 1 == self.steps { self.t1 } else { self.t0 + i as f64 * self.dt() })
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Scenario {
    LinearCase1 { params: ModeParams, j: HalfInt, m: HalfInt },
    LinearCase2 { params: ModeParams, j: HalfInt, m: HalfInt },
    SpinBoson { spec: BlockSpec },
    Classical { state: ClassicalState },
    Compare { spec: BlockSpec },
}

impl Scenario {
    pub fn kind(&self) -> ScenarioKind {
        match self {
            Scenario::LinearCase1 { .. } => ScenarioKind::LinearCase1,
            Scenario::LinearCase2 { .. } => ScenarioKind::LinearCase2,
            Scenario::SpinBoson { .. } => ScenarioKind::SpinBoson,
            Scenario::Classical { .. } => ScenarioKind::Classical,
            Scenario::Compare { .. } => ScenarioKind::Compare,
        }
    }
}

/// A validated experiment description.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub flags: Option<LambdaFlags>,
    pub grid: TimeGrid,
    pub output: Option<PathBuf>,
    /// The raw entries the config was built from.
    pub echo: BTreeMap<String, String>,
}

fn parse_f64(raw: &RawConfig, key: &str) -> Result<Option<f64>, ConfigError> {
    let Some(v) = raw.get(key) else { return Ok(None) };
    let x: f64 = v.parse().map_err(|_| ConfigError::invalid(key, format!("expected a number, found {v:?}")))?;
    if !x.is_finite() {
        return Err(ConfigError::invalid(key, "must be finite"));
    }
    Ok(Some(x))
}

fn parse_u32(raw: &RawConfig, key: &str) -> Result<Option<u32>, ConfigError> {
    let Some(v) = raw.get(key) else { return Ok(None) };
    v.parse()
        .map(Some)
        .map_err(|_| ConfigError::invalid(key, format!("expected a non-negative integer, found {v:?}")))
}

fn parse_flag(raw: &RawConfig, key: &str) -> Result<Option<bool>, ConfigError> {
    match raw.get(key) {
        None => Ok(None),
        Some("0") => Ok(Some(false)),
        Some("1") => Ok(Some(true)),
        Some(v) => Err(ConfigError::invalid(key, format!("expected 0 or 1, found {v:?}"))),
    }
}

/// `"3/2"`, `"1.5"` or `"2"`.
pub fn parse_half_int(field: &str, v: &str) -> Result<HalfInt, ConfigError> {
    let bad = || ConfigError::invalid(field, format!("expected a half-integer such as 1/2 or 1.5, found {v:?}"));
    if let Some((num, den)) = v.split_once('/') {
        let num: i32 = num.trim().parse().map_err(|_| bad())?;
        return match den.trim() {
            "2" => Ok(HalfInt::from_twice(num)),
            "1" => Ok(HalfInt::integer(num)),
            _ => Err(bad()),
        };
    }
    let x: f64 = v.parse().map_err(|_| bad())?;
    let twice = 2.0 * x;
    if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > f64::from(i32::MAX) {
        return Err(bad());
    }
    Ok(HalfInt::from_twice(twice as i32))
}

fn parse_kappa(raw: &RawConfig, kind: ScenarioKind) -> Result<f64, ConfigError> {
    let kappa = require(parse_f64(raw, "kappa")?, "kappa", kind)?;
    if kappa < 0.0 {
        return Err(ConfigError::invalid("kappa", "must be non-negative"));
    }
    Ok(kappa)
}

fn require<T>(value: Option<T>, field: &'static str, kind: ScenarioKind) -> Result<T, ConfigError> {
    value.ok_or(ConfigError::Missing { field, scenario: kind.name() })
}

fn mode_params(raw: &RawConfig, kind: ScenarioKind) -> Result<ModeParams, ConfigError> {
    let kappa = parse_kappa(raw, kind)?;
    let omega2 = require(parse_f64(raw, "omega2")?, "omega2", kind)?;
    if let Some(gamma) = parse_f64(raw, "gamma_override")? {
        if raw.get("omega1").is_some() {
            return Err(ConfigError::invalid("gamma_override", "cannot be combined with omega1"));
        }
        return ModeParams::with_gamma(omega2, kappa, gamma)
            .map_err(|e| ConfigError::invalid("gamma_override", e.to_string()));
    }
    let omega1 = require(parse_f64(raw, "omega1")?, "omega1", kind)?;
    derive_params(omega1, omega2, kappa).map_err(|e| ConfigError::invalid("omega1", e.to_string()))
}

fn block_spec(raw: &RawConfig, kind: ScenarioKind) -> Result<BlockSpec, ConfigError> {
    let kappa = parse_kappa(raw, kind)?;
    let n1 = require(parse_u32(raw, "n1")?, "n1", kind)?;
    let j = parse_half_int("j", require(raw.get("j"), "j", kind)?)?;
    let omega = parse_f64(raw, "omega1")?.unwrap_or(1.0);
    if let Some(omega2) = parse_f64(raw, "omega2")? {
        if omega2 != omega {
            return Err(ConfigError::invalid("omega2", "the spin-boson coupling is resonant; omega2 must equal omega1"));
        }
    }
    BlockSpec::new(n1, j, kappa, omega).map_err(|e| ConfigError::invalid("j", e.to_string()))
}

impl ScenarioConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<Self, ConfigError> {
        let kind: ScenarioKind = raw
            .get("scenario")
            .ok_or(ConfigError::Missing { field: "scenario", scenario: "any" })?
            .parse()?;
        const COMMON: &[&str] = &["scenario", "lambda1", "lambda2", "t0", "t1", "steps", "output"];
        for key in raw.entries().keys() {
            if !COMMON.contains(&key.as_str()) && !kind.fields().contains(&key.as_str()) {
                return Err(ConfigError::Unused { field: key.clone(), scenario: kind.name() });
            }
        }

        let scenario = match kind {
            ScenarioKind::LinearCase1 | ScenarioKind::LinearCase2 => {
                let params = mode_params(raw, kind)?;
                let big1 = require(parse_u32(raw, "N1")?, "N1", kind)?;
                let big2 = require(parse_u32(raw, "N2")?, "N2", kind)?;
                let total = i32::try_from(u64::from(big1) + u64::from(big2))
                    .map_err(|_| ConfigError::invalid("N1", "occupations too large"))?;
                if total == 0 {
                    return Err(ConfigError::invalid("N1", "N1 + N2 must be positive"));
                }
                let j = HalfInt::from_twice(total);
                let m = HalfInt::from_twice(big1 as i32 - big2 as i32);
                if kind == ScenarioKind::LinearCase1 {
                    Scenario::LinearCase1 { params, j, m }
                } else {
                    Scenario::LinearCase2 { params, j, m }
                }
            }
            ScenarioKind::SpinBoson => Scenario::SpinBoson { spec: block_spec(raw, kind)? },
            ScenarioKind::Compare => Scenario::Compare { spec: block_spec(raw, kind)? },
            ScenarioKind::Classical => {
                let kappa = parse_kappa(raw, kind)?;
                let n1 = require(parse_u32(raw, "n1")?, "n1", kind)?;
                let j = parse_half_int("j", require(raw.get("j"), "j", kind)?)?.to_f64();
                if j <= 0.0 {
                    return Err(ConfigError::invalid("j", "must be positive"));
                }
                let jz0 = parse_f64(raw, "jz0")?.unwrap_or(j);
                let k = parse_f64(raw, "K")?.unwrap_or(0.0);
                let e = f64::from(n1) + jz0;
                let state = match parse_f64(raw, "jz_dot0")? {
                    Some(v) => ClassicalState::new(jz0, v, e, j, k, kappa),
                    None => ClassicalState::energy_consistent(jz0, e, j, k, kappa),
                }
                .map_err(|err| ConfigError::invalid("jz0", err.to_string()))?;
                Scenario::Classical { state }
            }
        };

        let flags = match (parse_flag(raw, "lambda1")?, parse_flag(raw, "lambda2")?) {
            (None, None) => None,
            (Some(lambda1), Some(lambda2)) => Some(LambdaFlags { lambda1, lambda2 }),
            (Some(_), None) => return Err(ConfigError::Missing { field: "lambda2", scenario: kind.name() }),
            (None, Some(_)) => return Err(ConfigError::Missing { field: "lambda1", scenario: kind.name() }),
        };

        let t0 = parse_f64(raw, "t0")?.unwrap_or(0.0);
        let t1 = require(parse_f64(raw, "t1")?, "t1", kind)?;
        let steps = match raw.get("steps") {
            None => DEFAULT_STEPS,
            Some(v) => v.parse().map_err(|_| ConfigError::invalid("steps", format!("expected an integer, found {v:?}")))?,
        };
        if steps < 2 {
            return Err(ConfigError::invalid("steps", "must be at least 2"));
        }
        if t1 <= t0 {
            return Err(ConfigError::invalid("t1", "must exceed t0"));
        }
        if t0 < 0.0 {
            return Err(ConfigError::invalid("t0", "must be non-negative"));
        }
        if matches!(kind, ScenarioKind::Classical | ScenarioKind::Compare) && t0 != 0.0 {
            return Err(ConfigError::invalid("t0", "trajectories start at t0 = 0"));
        }

        Ok(ScenarioConfig {
            scenario,
            flags,
            grid: TimeGrid { t0, t1, steps },
            output: raw.get("output").map(PathBuf::from),
            echo: raw.entries().clone(),
        })
    }
}
