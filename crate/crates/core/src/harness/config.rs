use std::collections::BTreeMap;
use std::path::Path;

use super::{cm, khz, us, GridPoint};
use crate::coding::Payload;
use crate::error::{Error, Result};
use crate::imaging::ScenePose;
use crate::photometry::{CameraModel, Environment, TransmitterModel};
use crate::scene::Scene;

/// Flat `dotted.key=value` settings.
pub type KeyValues = BTreeMap<String, String>;

/// Parses `key=value` lines. Blank lines and `#` comments are skipped.
pub fn parse_key_values(text: &str) -> Result<KeyValues> {
    let mut out = KeyValues::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key=value", n + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Built-in receiver defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceProfile {
    pub name: &'static str,
    pub readout_time: f64,
    /// Shortest exposure the camera allows, when known.
    pub min_exposure: Option<f64>,
}

impl DeviceProfile {
    pub const PHONE: DeviceProfile = DeviceProfile {
        name: "phone",
        readout_time: 8e-6,
        min_exposure: Some(68e-6),
    };

    pub const TABLET: DeviceProfile = DeviceProfile {
        name: "tablet",
        readout_time: 13e-6,
        min_exposure: None,
    };

    pub fn by_name(name: &str) -> Result<DeviceProfile> {
        match name {
            "phone" => Ok(Self::PHONE),
            "tablet" => Ok(Self::TABLET),
            other => Err(Error::Config(format!("unknown device profile {other:?}"))),
        }
    }

    /// Camera with the default raster, optics and the given exposure.
    pub fn camera(&self, exposure_time: f64) -> CameraModel {
        CameraModel {
            iso_speed: 100.0,
            exposure_time,
            aperture: 2.0,
            readout_time: self.readout_time,
            columns: 1920,
            rows: 1080,
            focal_length_px: 1000.0,
            principal_point: (960.0, 540.0),
        }
    }
}

/// A full sweep definition.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Hz.
    pub frequencies: Vec<f64>,
    /// Meters.
    pub distances: Vec<f64>,
    /// Seconds.
    pub exposures: Vec<f64>,
    pub trials_per_point: usize,
    pub seed: u64,
    /// Receiver; its exposure time is replaced per grid point.
    pub device: CameraModel,
    /// Transmitter; its frequency is replaced per grid point.
    pub transmitter: TransmitterModel,
    pub environment: Environment,
    /// Meters, panel centre relative to the optical axis.
    pub lateral_offset: (f64, f64),
}

pub(crate) const DEFAULT_CODE: &str = "1011010010";

impl SweepConfig {
    /// Default grid for a profile: 2..20 kHz in 2 kHz steps, 60..200 cm in
    /// 20 cm steps, the minimum exposure and twice it, five trials.
    pub fn for_profile(profile: &DeviceProfile, min_exposure: f64) -> SweepConfig {
        SweepConfig {
            frequencies: (1..=10).map(|i| khz(2.0 * i as f64)).collect(),
            distances: (0..8).map(|i| cm(60.0 + 20.0 * i as f64)).collect(),
            exposures: vec![min_exposure, 2.0 * min_exposure],
            trials_per_point: 5,
            seed: 1,
            device: profile.camera(min_exposure),
            transmitter: TransmitterModel::rectangular(1.2, 0.6, 3600.0, khz(4.0), DEFAULT_CODE.parse().unwrap()),
            environment: Environment::default(),
            lateral_offset: (0.02, 0.01),
        }
    }

    pub fn phone() -> SweepConfig {
        SweepConfig::for_profile(&DeviceProfile::PHONE, us(68.0))
    }

    pub fn tablet(min_exposure: f64) -> SweepConfig {
        SweepConfig::for_profile(&DeviceProfile::TABLET, min_exposure)
    }

    pub fn validate(&self) -> Result<()> {
        if self.frequencies.is_empty() || self.distances.is_empty() || self.exposures.is_empty() {
            return Err(Error::Config(
                "frequency, distance and exposure lists must be non-empty".into(),
            ));
        }
        if self.trials_per_point == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        Ok(())
    }

    /// Grid points in output order: frequency, then distance, then exposure.
    pub fn grid(&self) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(self.frequencies.len() * self.distances.len() * self.exposures.len());
        for &frequency in &self.frequencies {
            for &distance in &self.distances {
                for &exposure in &self.exposures {
                    out.push(GridPoint {
                        frequency,
                        distance,
                        exposure,
                    });
                }
            }
        }
        out
    }

    pub fn scene(&self, point: &GridPoint) -> Scene {
        Scene {
            camera: self.device.with_exposure(point.exposure),
            transmitter: self.transmitter.with_frequency(point.frequency),
            environment: self.environment.clone(),
            pose: ScenePose::new(point.distance, self.lateral_offset),
        }
    }

    pub fn code(&self) -> &Payload {
        &self.transmitter.payload
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<SweepConfig> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        SweepConfig::from_key_values(&parse_key_values(&text)?)
    }

    /// Builds a config from `device` defaults overridden by `kv`.
    ///
    /// Keys carry their unit: `camera.exposure_us`, `camera.readout_time_us`,
    /// `sweep.frequencies_khz`, `sweep.distances_cm`, and so on. Unknown keys
    /// are rejected.
    pub fn from_key_values(kv: &KeyValues) -> Result<SweepConfig> {
        let profile = DeviceProfile::by_name(kv.get("device").map(String::as_str).unwrap_or("phone"))?;
        let exposures = kv
            .get("sweep.exposures_us")
            .map(|v| parse_list(v, "sweep.exposures_us"))
            .transpose()?;
        let min_exposure = match kv.get("camera.exposure_us") {
            Some(v) => us(parse_num(v, "camera.exposure_us")?),
            None => match (profile.min_exposure, &exposures) {
                (Some(t), _) => t,
                (None, Some(list)) if !list.is_empty() => us(list[0]),
                _ => {
                    return Err(Error::Config(format!(
                        "device {:?} has no known minimum exposure; set camera.exposure_us",
                        profile.name
                    )))
                }
            },
        };
        let mut cfg = SweepConfig::for_profile(&profile, min_exposure);
        if let Some(list) = exposures {
            cfg.exposures = list.into_iter().map(us).collect();
        }
        for (key, value) in kv {
            let num = || parse_num(value, key);
            match key.as_str() {
                "device" | "camera.exposure_us" | "sweep.exposures_us" => {}
                "camera.iso" => cfg.device.iso_speed = num()?,
                "camera.aperture" => cfg.device.aperture = num()?,
                "camera.readout_time_us" => cfg.device.readout_time = us(num()?),
                "camera.columns" => cfg.device.columns = parse_count(value, key)?,
                "camera.rows" => cfg.device.rows = parse_count(value, key)?,
                "camera.focal_length_px" => cfg.device.focal_length_px = num()?,
                "camera.principal_point_px" => cfg.device.principal_point = parse_pair(value, key)?,
                "transmitter.luminance_cd_m2" => cfg.transmitter.luminance = num()?,
                "transmitter.code" => cfg.transmitter.payload = value.parse()?,
                "transmitter.size_m" => {
                    let (w, h) = parse_pair(value, key)?;
                    cfg.transmitter = TransmitterModel::rectangular(
                        w,
                        h,
                        cfg.transmitter.luminance,
                        cfg.transmitter.frequency,
                        cfg.transmitter.payload.clone(),
                    );
                }
                "environment.illuminance_lux" => cfg.environment.illuminance = num()?,
                "environment.reflectance" => cfg.environment.reflectance = num()?,
                "environment.k" => cfg.environment.calibration_constant = num()?,
                "environment.gamma" => cfg.environment.gamma = num()?,
                "scene.lateral_offset_m" => cfg.lateral_offset = parse_pair(value, key)?,
                "sweep.frequencies_khz" => cfg.frequencies = parse_list(value, key)?.into_iter().map(khz).collect(),
                "sweep.distances_cm" => cfg.distances = parse_list(value, key)?.into_iter().map(cm).collect(),
                "sweep.trials" => cfg.trials_per_point = parse_count(value, key)?,
                "sweep.seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| Error::Config(format!("{key}: expected an unsigned integer")))?
                }
                other => return Err(Error::Config(format!("unknown key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_num(v: &str, key: &str) -> Result<f64> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: expected a number, got {v:?}")))
}

fn parse_count(v: &str, key: &str) -> Result<usize> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: expected a count, got {v:?}")))
}

fn parse_list(v: &str, key: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| parse_num(s, key)).collect()
}

fn parse_pair(v: &str, key: &str) -> Result<(f64, f64)> {
    match parse_list(v, key)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::Config(format!("{key}: expected two comma-separated numbers"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_size() {
        let cfg = SweepConfig::phone();
        assert_eq!(cfg.grid().len(), 160);
        assert_eq!(cfg.frequencies[0], 2000.0);
        assert_eq!(cfg.frequencies[9], 20000.0);
        assert_eq!(cfg.distances[7], 2.0);
        assert_eq!(cfg.exposures, vec![68e-6, 136e-6]);
    }

    #[test]
    fn key_value_overrides() {
        let kv = parse_key_values(
            "# phone at one point\ndevice=phone\ncamera.readout_time_us=8\nsweep.frequencies_khz=4, 8\n\
             sweep.distances_cm=120\nsweep.exposures_us=68\ntransmitter.code=1100\nsweep.seed=9\n",
        )
        .unwrap();
        let cfg = SweepConfig::from_key_values(&kv).unwrap();
        assert_eq!(cfg.frequencies, vec![4000.0, 8000.0]);
        assert_eq!(cfg.distances, vec![1.2]);
        assert_eq!(cfg.exposures, vec![68e-6]);
        assert_eq!(cfg.code().to_string(), "1100");
        assert_eq!(cfg.seed, 9);
    }

    #[test]
    fn tablet_needs_exposure() {
        let mut kv = KeyValues::new();
        kv.insert("device".into(), "tablet".into());
        assert!(SweepConfig::from_key_values(&kv).is_err());
        kv.insert("camera.exposure_us".into(), "60".into());
        let cfg = SweepConfig::from_key_values(&kv).unwrap();
        assert_eq!(cfg.device.readout_time, 13e-6);
        assert_eq!(cfg.exposures.len(), 2);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(parse_key_values("novalue").is_err());
        let mut kv = KeyValues::new();
        kv.insert("camera.isso".into(), "100".into());
        assert!(SweepConfig::from_key_values(&kv).is_err());
        let mut kv = KeyValues::new();
        kv.insert("sweep.trials".into(), "0".into());
        assert!(SweepConfig::from_key_values(&kv).is_err());
    }
}
