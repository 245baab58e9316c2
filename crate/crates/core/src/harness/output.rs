use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::svg::{line_plot, Series};
use super::SweepResult;
use crate::error::{Error, Result};

pub const SWEEP_CSV_HEADER: &str = "frequency_hz,distance_m,exposure_s,success_rate_pct,trials,images_decoded";

/// Shortest decimal form after rounding to nine fractional digits.
pub fn fmt_num(v: f64) -> String {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

/// Sweep rows as CSV. Rows that failed carry an empty success rate.
pub fn write_sweep_csv<W: Write>(result: &SweepResult, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in &result.rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_num(r.point.frequency),
            fmt_num(r.point.distance),
            fmt_num(r.point.exposure),
            r.success_rate.map(fmt_num).unwrap_or_default(),
            r.trials,
            r.images_decoded
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    CsvAndSvg,
}

/// Writes `sweep.csv` into `dir` and, for [`OutputFormat::CsvAndSvg`], one
/// success-rate-versus-frequency plot per exposure. Returns the files written.
pub fn emit_outputs(result: &SweepResult, dir: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let csv = dir.join("sweep.csv");
    let mut buf = Vec::new();
    write_sweep_csv(result, &mut buf).expect("write to Vec");
    fs::write(&csv, buf).map_err(|e| Error::io(&csv, e))?;
    let mut written = vec![csv];
    if format == OutputFormat::CsvAndSvg {
        let mut exposures: Vec<f64> = result.rows.iter().map(|r| r.point.exposure).collect();
        exposures.sort_by(f64::total_cmp);
        exposures.dedup();
        for e in exposures {
            let mut distances: Vec<f64> = result
                .rows
                .iter()
                .filter(|r| r.point.exposure == e)
                .map(|r| r.point.distance)
                .collect();
            distances.sort_by(f64::total_cmp);
            distances.dedup();
            let series: Vec<Series> = distances
                .iter()
                .map(|&d| Series {
                    name: format!("{} cm", fmt_num(d * 100.0)),
                    points: result
                        .rows
                        .iter()
                        .filter(|r| r.point.exposure == e && r.point.distance == d)
                        .filter_map(|r| r.success_rate.map(|sr| (r.point.frequency / 1e3, sr)))
                        .collect(),
                })
                .collect();
            let title = format!("Success rate, exposure {} us", fmt_num(e * 1e6));
            let svg = line_plot(&title, "frequency (kHz)", "success rate (%)", &series);
            let path = dir.join(format!("success_rate_{}us.svg", fmt_num(e * 1e6)));
            fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}
