use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{io_err, CliError};
use crate::run::RunOutput;

/// Summary path next to a CSV file: `out.csv` becomes `out.json`.
pub fn summary_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Write the CSV and its summary. Without a path the CSV goes to stdout and
/// the summary to stderr.
pub fn write_run(output: &RunOutput, csv: Option<&Path>) -> Result<(), CliError> {
    let table = output.series.to_csv();
    let summary = output.summary.to_json()?;
    match csv {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            fs::write(path, table).map_err(io_err(path))?;
            let json = summary_path(path);
            fs::write(&json, summary).map_err(io_err(json.clone()))?;
        }
        None => {
            std::io::stdout().lock().write_all(table.as_bytes()).map_err(io_err("<stdout>"))?;
            std::io::stderr().lock().write_all(summary.as_bytes()).map_err(io_err("<stderr>"))?;
        }
    }
    Ok(())
}
