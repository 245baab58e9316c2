//! Parameter sweeps over the experimental grid, comparison against captured
//! images, and CSV/SVG output.

mod compare;
mod config;
mod output;
pub mod svg;
mod sweep;

pub use compare::{compare_with_experimental, export_experiment, write_comparison_csv, ComparisonRow, MANIFEST_FILE};
pub use config::{parse_key_values, DeviceProfile, KeyValues, SweepConfig};
pub use output::{emit_outputs, fmt_num, write_sweep_csv, OutputFormat, SWEEP_CSV_HEADER};
pub use sweep::{evaluate_point, point_images, point_phases, run_sweep, GridPoint, SweepResult, SweepRow};

/// Hz from kHz.
pub fn khz(v: f64) -> f64 {
    v * 1e3
}

/// Meters from centimeters.
pub fn cm(v: f64) -> f64 {
    v / 100.0
}

/// Seconds from microseconds.
pub fn us(v: f64) -> f64 {
    v / 1e6
}
