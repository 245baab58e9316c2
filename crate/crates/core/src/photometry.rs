//! Steady-state pixel values for a fully-on and a fully-off exposure.
//!
//! Both follow the reflected-light exposure model
//! `PV = 118 * ((S * t) / (K * N^2) * E)^(1/gamma)`, where `E` is the panel
//! luminance plus the diffuse ambient term `E_v * R / pi` when the light is
//! on, and the ambient term alone when it is off. Results are clamped to the
//! 8-bit range but kept as reals; quantization happens once, at image
//! composition.

use crate::coding::Payload;
use crate::error::{Error, Result};

/// Output scale of the exposure model.
pub const PIXEL_SCALE: f64 = 118.0;

/// Receiver parameters.
///
/// The readout axis ("columns") is the image x axis: `columns` is the raster
/// width and `rows` the number of pixels per readout line.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraModel {
    pub iso_speed: f64,
    /// Seconds.
    pub exposure_time: f64,
    /// f-number.
    pub aperture: f64,
    /// Seconds between the exposure starts of consecutive columns.
    pub readout_time: f64,
    pub columns: usize,
    pub rows: usize,
    pub focal_length_px: f64,
    pub principal_point: (f64, f64),
}

impl CameraModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.exposure_time > 0.0) {
            return Err(Error::InvalidCamera("exposure time must be positive"));
        }
        if !(self.readout_time > 0.0) {
            return Err(Error::InvalidCamera("readout time must be positive"));
        }
        if !(self.aperture > 0.0) {
            return Err(Error::InvalidCamera("aperture must be positive"));
        }
        if !(self.iso_speed > 0.0) {
            return Err(Error::InvalidCamera("ISO speed must be positive"));
        }
        if self.exposure_time < self.readout_time {
            return Err(Error::InvalidCamera("exposure time shorter than readout time"));
        }
        if self.columns == 0 || self.rows == 0 {
            return Err(Error::InvalidCamera("raster must have at least one column and row"));
        }
        if !(self.focal_length_px > 0.0) {
            return Err(Error::InvalidCamera("focal length must be positive"));
        }
        Ok(())
    }

    pub fn with_exposure(&self, exposure_time: f64) -> CameraModel {
        CameraModel {
            exposure_time,
            ..self.clone()
        }
    }
}

/// OOK-modulated LED panel.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmitterModel {
    /// cd/m².
    pub luminance: f64,
    /// Panel corners in meters, in the panel plane, relative to the panel
    /// centre. The x axis is parallel to the camera readout axis.
    pub corners: [[f64; 2]; 4],
    /// Hz. One OOK half-slot lasts `1 / frequency` seconds.
    pub frequency: f64,
    pub payload: Payload,
}

impl TransmitterModel {
    /// Axis-aligned rectangular panel centred on its own origin.
    pub fn rectangular(width: f64, height: f64, luminance: f64, frequency: f64, payload: Payload) -> Self {
        let (hw, hh) = (width / 2.0, height / 2.0);
        TransmitterModel {
            luminance,
            corners: [[-hw, -hh], [hw, -hh], [hw, hh], [-hw, hh]],
            frequency,
            payload,
        }
    }

    pub fn with_frequency(&self, frequency: f64) -> TransmitterModel {
        TransmitterModel {
            frequency,
            ..self.clone()
        }
    }

    /// Duration of one OOK half-slot (`t_LED`).
    pub fn switching_period(&self) -> f64 {
        1.0 / self.frequency
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.luminance > 0.0) {
            return Err(Error::InvalidPhotometry("luminance must be positive"));
        }
        if !(self.frequency > 0.0) {
            return Err(Error::InvalidPhotometry("switching frequency must be positive"));
        }
        if !is_simple_quad(&self.corners) {
            return Err(Error::InvalidPhotometry(
                "panel corners do not form a simple quadrilateral",
            ));
        }
        Ok(())
    }
}

/// Ambient light and exposure-model constants.
#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    /// lux.
    pub illuminance: f64,
    pub reflectance: f64,
    pub calibration_constant: f64,
    pub gamma: f64,
}

impl Default for Environment {
    fn default() -> Self {
        Environment {
            illuminance: 290.0,
            reflectance: 0.4,
            calibration_constant: 12.5,
            gamma: 2.22,
        }
    }
}

impl Environment {
    pub fn validate(&self) -> Result<()> {
        if !(self.illuminance >= 0.0) {
            return Err(Error::InvalidPhotometry("illuminance must be non-negative"));
        }
        if !(0.0..=1.0).contains(&self.reflectance) {
            return Err(Error::InvalidPhotometry("reflectance must lie in [0, 1]"));
        }
        if !(self.calibration_constant > 0.0) {
            return Err(Error::InvalidPhotometry("calibration constant must be positive"));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::InvalidPhotometry("gamma must be positive"));
        }
        Ok(())
    }

    fn ambient(&self) -> f64 {
        self.illuminance * self.reflectance / std::f64::consts::PI
    }
}

fn exposure_value(cam: &CameraModel, env: &Environment, light: f64) -> Result<f64> {
    if !(cam.iso_speed > 0.0) || !(cam.exposure_time > 0.0) || !(cam.aperture > 0.0) {
        return Err(Error::InvalidPhotometry("camera exposure parameters must be positive"));
    }
    env.validate()?;
    let gain = cam.iso_speed * cam.exposure_time / (env.calibration_constant * cam.aperture * cam.aperture);
    let pv = PIXEL_SCALE * (gain * light).powf(1.0 / env.gamma);
    Ok(pv.clamp(0.0, 255.0))
}

/// `PV_max`: pixel value when the panel stays on for the whole exposure.
pub fn pixel_value_on(cam: &CameraModel, tx: &TransmitterModel, env: &Environment) -> Result<f64> {
    if !(tx.luminance > 0.0) {
        return Err(Error::InvalidPhotometry("luminance must be positive"));
    }
    exposure_value(cam, env, tx.luminance + env.ambient())
}

/// `PV_min`: pixel value when the panel stays off for the whole exposure.
pub fn pixel_value_off(cam: &CameraModel, env: &Environment) -> Result<f64> {
    exposure_value(cam, env, env.ambient())
}

fn is_simple_quad(c: &[[f64; 2]; 4]) -> bool {
    fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    }
    fn segments_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
        let d1 = cross(q1, q2, p1);
        let d2 = cross(q1, q2, p2);
        let d3 = cross(p1, p2, q1);
        let d4 = cross(p1, p2, q2);
        d1 * d2 < 0.0 && d3 * d4 < 0.0
    }
    let area2: f64 = (0..4)
        .map(|i| {
            let (a, b) = (c[i], c[(i + 1) % 4]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum();
    area2.abs() > 0.0 && !segments_cross(c[0], c[1], c[2], c[3]) && !segments_cross(c[1], c[2], c[3], c[0])
}
