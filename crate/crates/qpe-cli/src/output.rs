//! File writers.
//!
//! Numeric cells use Rust's shortest round-trip float formatting, so a
//! given record list always serializes to the same bytes. Timestamps
//! never enter data files; they live in the metadata sidecar only.

use std::fs;
use std::path::Path;

use serde::Serialize;

use qpe_core::{Error, Result};

use crate::experiments::{CorrelationRow, DiffRow, SweepRow};

fn io_err(context: &str, e: impl std::fmt::Display) -> Error {
    Error::Io(std::io::Error::other(format!("{context}: {e}")))
}

fn coord_header(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("x{i}")).collect()
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Shape("sweep produced no rows".into()));
    }
    let dim = rows[0].coords.len();
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err("open csv", e))?;
    let mut header = coord_header(dim);
    header.extend(
        [
            "shannon",
            "pseudo_real",
            "pseudo_imag",
            "pseudo_modulus",
            "branch_flag",
        ]
        .map(String::from),
    );
    w.write_record(&header)
        .map_err(|e| io_err("write csv", e))?;
    for row in rows {
        let mut rec: Vec<String> = row.coords.iter().map(|v| v.to_string()).collect();
        rec.push(row.shannon.to_string());
        rec.push(row.pseudo_real.to_string());
        rec.push(row.pseudo_imag.to_string());
        rec.push(row.pseudo_modulus.to_string());
        rec.push(row.branch_flag.to_string());
        w.write_record(&rec).map_err(|e| io_err("write csv", e))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_diff_csv(path: &Path, rows: &[DiffRow]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Shape("difference sweep produced no rows".into()));
    }
    let dim = rows[0].coords.len();
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err("open csv", e))?;
    let mut header = coord_header(dim);
    header.extend(["shannon", "diff_real", "diff_modulus"].map(String::from));
    w.write_record(&header)
        .map_err(|e| io_err("write csv", e))?;
    for row in rows {
        let mut rec: Vec<String> = row.coords.iter().map(|v| v.to_string()).collect();
        rec.push(row.shannon.to_string());
        rec.push(row.diff_real.to_string());
        rec.push(row.diff_modulus.to_string());
        w.write_record(&rec).map_err(|e| io_err("write csv", e))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_correlation_json(path: &Path, rows: &[CorrelationRow]) -> Result<()> {
    let text = serde_json::to_string_pretty(rows).map_err(|e| io_err("serialize json", e))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Gram matrices are written headerless: row i of the file is row i of
/// the matrix.
pub fn write_gram_csv(path: &Path, gram: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err("open csv", e))?;
    for row in gram {
        let rec: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        w.write_record(&rec).map_err(|e| io_err("write csv", e))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Sidecar<'a> {
    experiment: &'a str,
    seed: u64,
    created_utc: String,
    files: Vec<String>,
}

/// The one output that may differ between identical runs: a sidecar with
/// the wall-clock timestamp and the produced file list.
pub fn write_sidecar(
    path: &Path,
    experiment: &str,
    seed: u64,
    files: &[std::path::PathBuf],
) -> Result<()> {
    let sidecar = Sidecar {
        experiment,
        seed,
        created_utc: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        files: files
            .iter()
            .map(|f| {
                f.file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_else(|| f.display().to_string())
            })
            .collect(),
    };
    let text = serde_json::to_string_pretty(&sidecar).map_err(|e| io_err("serialize json", e))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Companion gnuplot script for a set of sweep or difference CSVs.
/// 1-d sweeps plot curves over x1; 2-d sweeps become surface plots.
pub fn write_gnuplot(
    path: &Path,
    experiment: &str,
    dim: usize,
    csvs: &[std::path::PathBuf],
    value_columns: &[(usize, &str)],
) -> Result<()> {
    let mut script = String::new();
    script.push_str(&format!("# {experiment}: generated plotting script\n"));
    script.push_str("set datafile separator ','\n");
    script.push_str("set key outside\n");
    for csv in csvs {
        let name = csv
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| csv.display().to_string());
        if dim == 1 {
            let parts: Vec<String> = value_columns
                .iter()
                .map(|(col, label)| {
                    format!("'{name}' using 1:{col} with lines title '{name} {label}'")
                })
                .collect();
            script.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
            script.push_str("pause -1\n");
        } else {
            for (col, label) in value_columns {
                script.push_str(&format!(
                    "splot '{name}' using 1:2:{col} with points pointtype 7 pointsize 0.3 title '{name} {label}'\n"
                ));
                script.push_str("pause -1\n");
            }
        }
    }
    fs::write(path, script)?;
    Ok(())
}
