//! Simulated versus captured success rates.
//!
//! Captures are laid out as `<freq_khz>/<distance_cm>/<exposure_us>/*.pgm`
//! (or `.png`) under a root holding `manifest.txt` with a `code=<bits>` line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{cm, fmt_num, khz, parse_key_values, point_images, us, GridPoint, SweepConfig};
use crate::coding::Payload;
use crate::decoder::{decode_image, success_rate, DecodeReport};
use crate::error::{Error, Result};
use crate::imaging::{read_image, write_image};

pub const MANIFEST_FILE: &str = "manifest.txt";

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub point: GridPoint,
    pub simulated: Option<f64>,
    /// `None` when the point directory holds no images.
    pub experimental: Option<f64>,
    pub images: usize,
    pub difference: Option<f64>,
    pub note: String,
}

fn read_manifest(dir: &Path) -> Result<Payload> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let kv = parse_key_values(&text)?;
    kv.get("code")
        .ok_or_else(|| Error::Config(format!("{}: missing code=", path.display())))?
        .parse()
}

// Numeric subdirectories, sorted by value. Unit suffixes are tolerated.
fn numeric_dirs(dir: &Path, suffix: &str) -> Result<Vec<(f64, PathBuf)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        if !entry.path().is_dir() {
            continue;
        }
        let name = entry.file_name().to_string_lossy().to_lowercase();
        match name.trim_end_matches(suffix).parse::<f64>() {
            Ok(v) => out.push((v, entry.path())),
            Err(_) => log::warn!("skipping non-numeric directory {}", entry.path().display()),
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

fn image_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| e.eq_ignore_ascii_case("pgm") || e.eq_ignore_ascii_case("png"))
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Decodes every capture under `dir` and sets its success rate beside the
/// simulated one for the same point. The manifest's code replaces the
/// config's.
pub fn compare_with_experimental(dir: &Path, config: &SweepConfig) -> Result<Vec<ComparisonRow>> {
    let code = read_manifest(dir)?;
    let mut config = config.clone();
    config.transmitter.payload = code.clone();
    let grid = config.grid();
    let mut rows = Vec::new();
    for (f, fdir) in numeric_dirs(dir, "khz")? {
        for (d, ddir) in numeric_dirs(&fdir, "cm")? {
            for (e, edir) in numeric_dirs(&ddir, "us")? {
                let parsed = GridPoint {
                    frequency: khz(f),
                    distance: cm(d),
                    exposure: us(e),
                };
                // reuse the config's exact values when the point is on its grid
                let point = grid.iter().find(|p| p.key() == parsed.key()).copied().unwrap_or(parsed);
                let reports: Vec<DecodeReport> = image_files(&edir)?
                    .iter()
                    .map(|p| match read_image(p) {
                        Ok(img) => decode_image(&img, &code),
                        Err(err) => {
                            log::warn!("{}: {err}", p.display());
                            DecodeReport::absent()
                        }
                    })
                    .collect();
                let simulated = super::evaluate_point(&config, &point).success_rate;
                let (experimental, note) = if reports.is_empty() {
                    (None, "no data".to_string())
                } else {
                    (Some(success_rate(&reports, code.len())), String::new())
                };
                let difference = match (simulated, experimental) {
                    (Some(s), Some(x)) => Some((s - x).abs()),
                    _ => None,
                };
                rows.push(ComparisonRow {
                    point,
                    simulated,
                    experimental,
                    images: reports.len(),
                    difference,
                    note,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_comparison_csv<W: Write>(rows: &[ComparisonRow], mut out: W) -> std::io::Result<()> {
    writeln!(
        out,
        "frequency_hz,distance_m,exposure_s,simulated_pct,experimental_pct,abs_difference_pct,images,note"
    )?;
    let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_num(r.point.frequency),
            fmt_num(r.point.distance),
            fmt_num(r.point.exposure),
            opt(r.simulated),
            opt(r.experimental),
            opt(r.difference),
            r.images,
            r.note
        )?;
    }
    Ok(())
}

/// Writes the simulated captures of every grid point in the capture layout,
/// with a manifest. Feeding the result back through
/// [`compare_with_experimental`] with the same config reproduces the
/// simulated rates exactly.
pub fn export_experiment(config: &SweepConfig, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let manifest = dir.join(MANIFEST_FILE);
    fs::write(&manifest, format!("code={}\n", config.code())).map_err(|e| Error::io(&manifest, e))?;
    for point in config.grid() {
        let sub = dir
            .join(fmt_num(point.frequency / 1e3))
            .join(fmt_num(point.distance * 100.0))
            .join(fmt_num(point.exposure * 1e6));
        fs::create_dir_all(&sub).map_err(|e| Error::io(&sub, e))?;
        match point_images(config, &point) {
            Ok(images) => {
                for (i, img) in images.iter().enumerate() {
                    write_image(sub.join(format!("trial_{i:02}.pgm")), img)?;
                }
            }
            Err(e) => log::warn!("grid point {point:?}: {e}"),
        }
    }
    Ok(())
}
