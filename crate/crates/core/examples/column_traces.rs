// Column traces from the exposure-window integral next to the band model,
// for a long and a short exposure, plus the signal the decoder recovers
// from the rendered image. Written as CSV and one SVG plot.

use std::fs;
use std::path::PathBuf;

use occsim::decoder::decode_detailed;
use occsim::harness::svg::{line_plot, Series};
use occsim::harness::{cm, khz, us, DeviceProfile, GridPoint, SweepConfig};
use occsim::photometry::{pixel_value_off, pixel_value_on};
use occsim::shutter::{simulate_column_trace, sota_band_pattern, sota_column_trace};
use occsim::{ColumnTrace, Environment, Error, SignalTimeline, TransmitterModel};

const SHOWN: usize = 160;

fn series(name: String, trace: &ColumnTrace) -> Series {
    Series {
        name,
        points: trace
            .values
            .iter()
            .take(SHOWN)
            .enumerate()
            .map(|(i, &v)| (i as f64, v))
            .collect(),
    }
}

pub fn run_example() -> occsim::Result<()> {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("occsim-examples"));
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

    let env = Environment::default();
    let tx = TransmitterModel::rectangular(1.2, 0.6, 3600.0, khz(4.0), "1011010010".parse()?);
    let timeline = SignalTimeline::for_transmitter(&tx, 0.0)?;
    let mut plot = Vec::new();
    for t in [68.0, 136.0] {
        let cam = DeviceProfile::PHONE.camera(us(t));
        let (on, off) = (pixel_value_on(&cam, &tx, &env)?, pixel_value_off(&cam, &env)?);
        let ours = simulate_column_trace(&cam, &timeline, on, off)?;
        let bands = sota_band_pattern(&cam, tx.switching_period())?;
        let sota = sota_column_trace(&cam, &timeline, on, off)?;
        let max_diff = ours
            .values
            .iter()
            .zip(&sota.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "t = {t} us: complete band {:.2} columns, transition {:.2} columns, max |difference| {max_diff:.2e}",
            bands.complete, bands.transition
        );
        for (label, trace) in [("window", &ours), ("band", &sota)] {
            let path = dir.join(format!("trace_{label}_{t}us.csv"));
            let f = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
            trace
                .write_csv(std::io::BufWriter::new(f))
                .map_err(|e| Error::io(&path, e))?;
        }
        plot.push(series(format!("window {t} us"), &ours));
        plot.push(series(format!("band {t} us"), &sota));
    }

    // Past the exposure limit only the window integral is defined.
    let fast = tx.with_frequency(khz(16.0));
    let cam = DeviceProfile::PHONE.camera(us(136.0));
    match sota_band_pattern(&cam, fast.switching_period()) {
        Err(e) => println!("16 kHz at 136 us: band model: {e}"),
        Ok(_) => unreachable!("band model defined past its limit"),
    }
    let fast_trace = simulate_column_trace(
        &cam,
        &SignalTimeline::for_transmitter(&fast, 0.0)?,
        pixel_value_on(&cam, &fast, &env)?,
        pixel_value_off(&cam, &env)?,
    )?;
    plot.push(series("window 136 us, 16 kHz".into(), &fast_trace));

    let point = GridPoint {
        frequency: khz(4.0),
        distance: cm(60.0),
        exposure: us(68.0),
    };
    let image = SweepConfig::phone().scene(&point).simulate(0.0)?.image;
    let detail = decode_detailed(&image, 10)?;
    plot.push(Series {
        name: "decoder signal 68 us (equalized)".into(),
        points: detail
            .signal
            .iter()
            .enumerate()
            .map(|(i, &v)| ((detail.roi.left + i) as f64, v))
            .filter(|&(x, _)| x < SHOWN as f64)
            .collect(),
    });

    let svg = dir.join("column_traces.svg");
    fs::write(&svg, line_plot("Column traces, 4 kHz", "column", "pixel value", &plot))
        .map_err(|e| Error::io(&svg, e))?;
    println!("wrote {}", svg.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> occsim::Result<()> {
    run_example()
}
