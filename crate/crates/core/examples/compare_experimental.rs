// Compare simulated success rates with a capture directory. Without an
// argument, the simulator's own captures are exported and compared back,
// which must agree exactly.

use std::path::PathBuf;

use occsim::harness::{cm, compare_with_experimental, export_experiment, khz, write_comparison_csv, SweepConfig};

pub fn run_example() -> occsim::Result<()> {
    let mut config = SweepConfig::phone();
    config.frequencies = [4.0, 12.0].map(khz).to_vec();
    config.distances = vec![cm(80.0)];
    config.trials_per_point = 2;
    let dir = match std::env::args_os().nth(1) {
        Some(d) => PathBuf::from(d),
        None => {
            let d = std::env::temp_dir().join("occsim-examples").join("captures");
            export_experiment(&config, &d)?;
            d
        }
    };
    let rows = compare_with_experimental(&dir, &config)?;
    write_comparison_csv(&rows, std::io::stdout().lock()).map_err(|e| occsim::Error::io(&dir, e))?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> occsim::Result<()> {
    run_example()
}
