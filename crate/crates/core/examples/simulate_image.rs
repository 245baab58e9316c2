// Synthesize one capture of the panel and write it as PGM and PNG.
//
// Output goes to the directory given as the first argument, or to a
// temporary directory.

use std::path::PathBuf;

use occsim::harness::{cm, khz, us, GridPoint, SweepConfig};
use occsim::imaging::write_image;

fn out_dir() -> PathBuf {
    std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("occsim-examples"))
}

pub fn run_example() -> occsim::Result<()> {
    let config = SweepConfig::phone();
    let point = GridPoint {
        frequency: khz(4.0),
        distance: cm(60.0),
        exposure: us(68.0),
    };
    let frame = config.scene(&point).simulate(us(25.0))?;
    println!(
        "{}x{} image, PV_max {:.2}, PV_min {:.2}, panel covers {} px",
        frame.image.width(),
        frame.image.height(),
        frame.pv_max,
        frame.pv_min,
        frame.mask.count()
    );
    let dir = out_dir();
    std::fs::create_dir_all(&dir).map_err(|e| occsim::Error::io(&dir, e))?;
    for name in ["capture_4khz_60cm.pgm", "capture_4khz_60cm.png"] {
        let path = dir.join(name);
        write_image(&path, &frame.image)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> occsim::Result<()> {
    run_example()
}
