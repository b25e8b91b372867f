//! Cartesian parameter sweeps.
//!
//! A grid spec lists overrides as `key=v1,v2;key2=a,b`. Points are numbered
//! with the first key varying slowest.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RawConfig, ScenarioConfig, KNOWN_KEYS};
use crate::error::{io_err, CliError, ConfigError};
use crate::output::write_run;
use crate::run::run;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    axes: Vec<(String, Vec<String>)>,
}

impl GridSpec {
    pub fn parse(spec: &str) -> Result<Self, ConfigError> {
        let mut axes: Vec<(String, Vec<String>)> = Vec::new();
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, values) = part
                .split_once('=')
                .ok_or_else(|| ConfigError::Grid(format!("expected key=v1,v2,..., found {part:?}")))?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) || key == "scenario" || key == "output" {
                return Err(ConfigError::Grid(format!("cannot sweep over {key:?}")));
            }
            if axes.iter().any(|(k, _)| k == key) {
                return Err(ConfigError::Grid(format!("key {key:?} appears twice")));
            }
            let values: Vec<String> = values.split(',').map(|v| v.trim().to_owned()).collect();
            if values.iter().any(String::is_empty) {
                return Err(ConfigError::Grid(format!("empty value for {key:?}")));
            }
            axes.push((key.to_owned(), values));
        }
        if axes.is_empty() {
            return Err(ConfigError::Grid("no axes given".into()));
        }
        Ok(GridSpec { axes })
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|(_, v)| v.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Overrides of point `index`.
    pub fn point(&self, mut index: usize) -> Vec<(String, String)> {
        let mut out = vec![(String::new(), String::new()); self.axes.len()];
        for (slot, (key, values)) in self.axes.iter().enumerate().rev() {
            out[slot] = (key.clone(), values[index % values.len()].clone());
            index /= values.len();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointRecord {
    pub index: usize,
    pub overrides: BTreeMap<String, String>,
    pub status: String,
    pub exit_code: u8,
    pub csv: Option<String>,
    pub summary: Option<String>,
    pub max_measure: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Manifest {
    pub points: Vec<PointRecord>,
    pub failed: usize,
}

impl Manifest {
    /// Worst exit code over all points.
    pub fn exit_code(&self) -> u8 {
        self.points.iter().map(|p| p.exit_code).max().unwrap_or(0)
    }
}

fn run_point(base: &RawConfig, overrides: &[(String, String)], dir: &Path, index: usize) -> PointRecord {
    let name = format!("point-{index:04}");
    let mut record = PointRecord {
        index,
        overrides: overrides.iter().cloned().collect(),
        status: "ok".into(),
        exit_code: 0,
        csv: None,
        summary: None,
        max_measure: None,
    };
    let result = (|| {
        let mut raw = base.clone();
        for (k, v) in overrides {
            raw.insert(k, v)?;
        }
        let config = ScenarioConfig::from_raw(&raw)?;
        let output = run(&config)?;
        let csv = dir.join(format!("{name}.csv"));
        write_run(&output, Some(&csv))?;
        Ok::<_, CliError>(output)
    })();
    match result {
        Ok(output) => {
            record.csv = Some(format!("{name}.csv"));
            record.summary = Some(format!("{name}.json"));
            record.max_measure = output.summary.max_measure;
            if let Err(e) = output.check() {
                record.status = e.to_string();
                record.exit_code = e.exit_code();
            }
        }
        Err(e) => {
            record.status = e.to_string();
            record.exit_code = e.exit_code();
        }
    }
    record
}

/// Run every grid point concurrently into `dir` and write `manifest.json`.
/// Failed points are recorded in the manifest instead of aborting the sweep.
pub fn sweep(base: &RawConfig, grid: &GridSpec, dir: &Path) -> Result<Manifest, CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let points: Vec<PointRecord> =
        (0..grid.len()).into_par_iter().map(|i| run_point(base, &grid.point(i), dir, i)).collect();
    let failed = points.iter().filter(|p| p.exit_code != 0).count();
    let manifest = Manifest { points, failed };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    let path = dir.join("manifest.json");
    fs::write(&path, json).map_err(io_err(path.clone()))?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_enumerate_first_axis_slowest() {
        let g = GridSpec::parse("kappa=0.5,1;j=1/2,1,3/2").unwrap();
        assert_eq!(g.len(), 6);
        let p = g.point(4);
        assert_eq!(p, vec![("kappa".into(), "1".into()), ("j".into(), "1".into())]);
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["", "kappa", "kappa=", "kappa=1;kappa=2", "scenario=classical", "mass=1"] {
            assert!(GridSpec::parse(bad).is_err(), "{bad}");
        }
    }
}
