// ON and OFF pixel values as exposure grows, for the phone camera.

use occsim::harness::{us, DeviceProfile};
use occsim::photometry::{pixel_value_off, pixel_value_on};
use occsim::{Environment, TransmitterModel};

pub fn run_example() -> occsim::Result<()> {
    let env = Environment::default();
    let tx = TransmitterModel::rectangular(1.2, 0.6, 3600.0, 4000.0, "1011010010".parse()?);
    println!("{:>12} {:>8} {:>8}", "exposure_us", "PV_on", "PV_off");
    for t in [17.0, 34.0, 68.0, 136.0, 272.0, 544.0, 1088.0] {
        let cam = DeviceProfile::PHONE.camera(us(t));
        let on = pixel_value_on(&cam, &tx, &env)?;
        let off = pixel_value_off(&cam, &env)?;
        println!("{t:>12} {on:>8.2} {off:>8.2}");
        assert!(on >= off);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> occsim::Result<()> {
    run_example()
}
