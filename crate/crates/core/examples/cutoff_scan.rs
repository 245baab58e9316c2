// Highest working frequency per receiver: scan upward until the success
// rate drops to 20% or below, for the phone at twice its minimum exposure
// and for the slower-readout tablet.

use occsim::harness::{cm, evaluate_point, khz, us, GridPoint, SweepConfig};

fn cutoff(name: &str, config: &SweepConfig, exposure: f64) -> Option<f64> {
    for f in (4..=24).step_by(2) {
        let point = GridPoint {
            frequency: khz(f as f64),
            distance: cm(60.0),
            exposure,
        };
        let sr = evaluate_point(config, &point).success_rate.unwrap_or(0.0);
        println!("{name:>6} {f:>3} kHz {sr:>5.0}%");
        if f > 8 && sr <= 20.0 {
            return Some(khz(f as f64));
        }
    }
    None
}

pub fn run_example() -> occsim::Result<()> {
    let mut phone = SweepConfig::phone();
    phone.trials_per_point = 3;
    let mut tablet = SweepConfig::tablet(us(60.0));
    tablet.trials_per_point = 3;
    for (name, config, exposure) in [("phone", &phone, us(136.0)), ("tablet", &tablet, us(120.0))] {
        match cutoff(name, config, exposure) {
            Some(f) => println!("{name}: detection lost at {} kHz", f / 1e3),
            None => println!("{name}: no cutoff below 24 kHz"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> occsim::Result<()> {
    run_example()
}
