// A reduced success-rate sweep written as CSV plus one SVG per exposure.
// Run with `--full` for the whole default phone grid.

use std::path::PathBuf;

use occsim::harness::{cm, emit_outputs, khz, run_sweep, OutputFormat, SweepConfig};

pub fn run_example() -> occsim::Result<()> {
    let full = std::env::args().any(|a| a == "--full");
    let mut config = SweepConfig::phone();
    if !full {
        config.frequencies = [4.0, 10.0, 16.0].map(khz).to_vec();
        config.distances = [60.0, 140.0].map(cm).to_vec();
        config.trials_per_point = 2;
    }
    let result = run_sweep(&config)?;
    for row in &result.rows {
        println!(
            "{:>5} kHz {:>4} cm {:>4} us  {}",
            row.point.frequency / 1e3,
            (row.point.distance * 100.0).round(),
            (row.point.exposure * 1e6).round(),
            row.success_rate.map_or("error".to_string(), |s| format!("{s:.0}%"))
        );
    }
    let dir: PathBuf = std::env::temp_dir().join("occsim-examples").join("sweep");
    for path in emit_outputs(&result, &dir, OutputFormat::CsvAndSvg)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> occsim::Result<()> {
    run_example()
}
