// Decode a capture step by step: bright region, column signal, runs,
// half-slots and payload. Pass an image path to decode it instead of a
// freshly simulated one (the payload is assumed to be 1011010010).

use occsim::decoder::{decode_detailed, decode_image};
use occsim::harness::{cm, khz, us, GridPoint, SweepConfig};
use occsim::imaging::read_image;
use occsim::Payload;

pub fn run_example() -> occsim::Result<()> {
    let config = SweepConfig::phone();
    let code: Payload = config.code().clone();
    let img = match std::env::args_os().nth(1) {
        Some(path) => read_image(path)?,
        None => {
            let point = GridPoint {
                frequency: khz(8.0),
                distance: cm(100.0),
                exposure: us(68.0),
            };
            config.scene(&point).simulate(us(40.0))?.image
        }
    };
    let detail = decode_detailed(&img, code.len())?;
    let r = detail.roi;
    println!("ROI {}x{} at ({}, {})", r.width, r.height, r.left, r.top);
    let lengths: Vec<String> = detail
        .runs
        .iter()
        .map(|run| format!("{}{}", if run.level.is_on() { '+' } else { '-' }, run.length))
        .collect();
    println!("runs    {}", lengths.join(" "));
    let slots: String = detail
        .slots
        .slots()
        .iter()
        .map(|l| if l.is_on() { '#' } else { '.' })
        .collect();
    println!("slots   {slots}");
    println!("headers {}", detail.headers_found);

    let report = decode_image(&img, &code);
    println!(
        "decoded {} ({} of {} bits correct)",
        report.received_code.map_or("-".to_string(), |p| p.to_string()),
        report.correct_bits,
        code.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> occsim::Result<()> {
    run_example()
}
