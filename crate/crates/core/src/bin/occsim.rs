use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use occsim::decoder::decode_image;
use occsim::harness::{
    compare_with_experimental, emit_outputs, export_experiment, parse_key_values, run_sweep, write_comparison_csv,
    GridPoint, KeyValues, OutputFormat, SweepConfig,
};
use occsim::imaging::{read_image, write_image};
use occsim::shutter::sota_column_trace;
use occsim::{Payload, SignalTimeline};

#[derive(Parser)]
#[command(name = "occsim", version, about = "Rolling-shutter OCC simulator and decoder")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize one capture.
    Simulate(SimulateArgs),
    /// Success rate over a frequency, distance and exposure grid.
    Sweep(SweepArgs),
    /// Decode captured images.
    Decode(DecodeArgs),
    /// Compare simulated success rates with captured images.
    Compare(CompareArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// Key=value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set camera.iso=200`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Device profile (phone or tablet).
    #[arg(long)]
    device: Option<String>,
    /// Transmitted payload bits.
    #[arg(long)]
    code: Option<String>,
}

impl ConfigArgs {
    fn key_values(&self) -> Result<KeyValues> {
        let mut kv = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                parse_key_values(&text)?
            }
            None => KeyValues::new(),
        };
        for item in &self.set {
            let Some((k, v)) = item.split_once('=') else {
                bail!("--set expects KEY=VALUE, got {item:?}");
            };
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        if let Some(d) = &self.device {
            kv.insert("device".into(), d.clone());
        }
        if let Some(c) = &self.code {
            kv.insert("transmitter.code".into(), c.clone());
        }
        Ok(kv)
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, default_value_t = 4.0)]
    frequency_khz: f64,
    #[arg(long, default_value_t = 60.0)]
    distance_cm: f64,
    /// Defaults to the device's minimum exposure.
    #[arg(long)]
    exposure_us: Option<f64>,
    /// Transmitter phase at the start of the first readout line.
    #[arg(long, default_value_t = 0.0)]
    phase_us: f64,
    /// Output image; `.png` writes PNG, anything else binary PGM.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write the column trace as CSV.
    #[arg(long)]
    trace_csv: Option<PathBuf>,
    /// Write the band-model column trace as CSV.
    #[arg(long)]
    sota_csv: Option<PathBuf>,
    /// Export every grid point of the config as a capture directory instead.
    #[arg(long)]
    grid_out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Comma-separated list.
    #[arg(long, value_delimiter = ',')]
    frequency_khz: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    distance_cm: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    exposure_us: Vec<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for sweep.csv and plots.
    #[arg(long, short, default_value = "sweep_out")]
    out_dir: PathBuf,
    /// Also write one SVG plot per exposure.
    #[arg(long)]
    svg: bool,
}

#[derive(Args)]
struct DecodeArgs {
    /// PGM or PNG images.
    #[arg(required = true)]
    images: Vec<PathBuf>,
    /// Expected payload bits; also fixes the payload length.
    #[arg(long)]
    code: String,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Capture directory laid out as <freq_khz>/<distance_cm>/<exposure_us>/.
    #[arg(long)]
    experimental: PathBuf,
    /// Comparison CSV; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct DecodeLine {
    file: String,
    headers_found: usize,
    received_code: Option<String>,
    correct_bits: usize,
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let mut kv = args.config.key_values()?;
    if let Some(dir) = &args.grid_out {
        let config = SweepConfig::from_key_values(&kv)?;
        export_experiment(&config, dir)?;
        log::info!("exported {} grid points to {}", config.grid().len(), dir.display());
        return Ok(());
    }
    if let Some(e) = args.exposure_us {
        kv.insert("camera.exposure_us".into(), e.to_string());
    }
    let config = SweepConfig::from_key_values(&kv)?;
    let point = GridPoint {
        frequency: args.frequency_khz * 1e3,
        distance: args.distance_cm * 1e-2,
        exposure: args.exposure_us.map_or(config.device.exposure_time, |e| e * 1e-6),
    };
    let scene = config.scene(&point);
    let frame = scene.simulate(args.phase_us * 1e-6)?;
    log::info!("PV_max {:.3}, PV_min {:.3}", frame.pv_max, frame.pv_min);
    if let Some(path) = &args.out {
        write_image(path, &frame.image)?;
    }
    if let Some(path) = &args.trace_csv {
        let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        frame.trace.write_csv(std::io::BufWriter::new(f))?;
    }
    if let Some(path) = &args.sota_csv {
        let timeline = SignalTimeline::for_transmitter(&scene.transmitter, args.phase_us * 1e-6)?;
        let trace = sota_column_trace(&scene.camera, &timeline, frame.pv_max, frame.pv_min)?;
        let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        trace.write_csv(std::io::BufWriter::new(f))?;
    }
    if args.out.is_none() && args.trace_csv.is_none() && args.sota_csv.is_none() {
        bail!("nothing to write: pass --out, --trace-csv, --sota-csv or --grid-out");
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<()> {
    let mut kv = args.config.key_values()?;
    if !args.frequency_khz.is_empty() {
        kv.insert("sweep.frequencies_khz".into(), join(&args.frequency_khz));
    }
    if !args.distance_cm.is_empty() {
        kv.insert("sweep.distances_cm".into(), join(&args.distance_cm));
    }
    if !args.exposure_us.is_empty() {
        kv.insert("sweep.exposures_us".into(), join(&args.exposure_us));
    }
    if let Some(t) = args.trials {
        kv.insert("sweep.trials".into(), t.to_string());
    }
    if let Some(s) = args.seed {
        kv.insert("sweep.seed".into(), s.to_string());
    }
    let config = SweepConfig::from_key_values(&kv)?;
    let result = run_sweep(&config)?;
    let format = if args.svg {
        OutputFormat::CsvAndSvg
    } else {
        OutputFormat::Csv
    };
    for path in emit_outputs(&result, &args.out_dir, format)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn decode(args: DecodeArgs) -> Result<()> {
    let code: Payload = args.code.parse()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for path in &args.images {
        let img = read_image(path)?;
        let report = decode_image(&img, &code);
        let line = DecodeLine {
            file: path.display().to_string(),
            headers_found: report.headers_found,
            received_code: report.received_code.map(|c| c.to_string()),
            correct_bits: report.correct_bits,
        };
        writeln!(out, "{}", serde_json::to_string(&line)?)?;
    }
    Ok(())
}

fn compare(args: CompareArgs) -> Result<()> {
    let config = SweepConfig::from_key_values(&args.config.key_values()?)?;
    let rows = compare_with_experimental(&args.experimental, &config)?;
    match &args.out {
        Some(path) => {
            let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_comparison_csv(&rows, std::io::BufWriter::new(f))?;
        }
        None => write_comparison_csv(&rows, std::io::stdout().lock())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let result = match Cli::parse().command {
        Command::Simulate(a) => simulate(a),
        Command::Sweep(a) => sweep(a),
        Command::Decode(a) => decode(a),
        Command::Compare(a) => compare(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
