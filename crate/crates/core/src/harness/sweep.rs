use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SweepConfig;
use crate::decoder::{decode_image, success_rate, DecodeReport};
use crate::error::Result;
use crate::imaging::GrayImage;

/// One (frequency, distance, exposure) combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    /// Hz.
    pub frequency: f64,
    /// Meters.
    pub distance: f64,
    /// Seconds.
    pub exposure: f64,
}

impl GridPoint {
    /// Integer key in mHz, µm and ns; stable under unit round trips.
    pub fn key(&self) -> (u64, u64, u64) {
        (
            (self.frequency * 1e3).round() as u64,
            (self.distance * 1e6).round() as u64,
            (self.exposure * 1e9).round() as u64,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: GridPoint,
    /// Percent; `None` when the point could not be simulated.
    pub success_rate: Option<f64>,
    pub trials: usize,
    pub images_decoded: usize,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn row(&self, frequency: f64, distance: f64, exposure: f64) -> Option<&SweepRow> {
        let key = GridPoint {
            frequency,
            distance,
            exposure,
        }
        .key();
        self.rows.iter().find(|r| r.point.key() == key)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Capture phases for a point, uniform over one frame duration. The stream
/// depends only on the seed and the point, not on grid order.
pub fn point_phases(config: &SweepConfig, point: &GridPoint) -> Result<Vec<f64>> {
    let frame = config.scene(point).frame_duration()?;
    let (a, b, c) = point.key();
    let seed = splitmix(splitmix(splitmix(config.seed ^ a) ^ b) ^ c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..config.trials_per_point)
        .map(|_| rng.gen_range(0.0..frame))
        .collect())
}

/// The simulated captures for one point.
pub fn point_images(config: &SweepConfig, point: &GridPoint) -> Result<Vec<GrayImage>> {
    let scene = config.scene(point);
    scene.validate()?;
    let (corners, mask) = scene.panel_mask()?;
    point_phases(config, point)?
        .into_iter()
        .map(|phase| Ok(scene.simulate_with_mask(phase, corners, mask.clone())?.image))
        .collect()
}

/// Simulates and decodes every trial of one point.
pub fn evaluate_point(config: &SweepConfig, point: &GridPoint) -> SweepRow {
    let code = config.code();
    let reports: Result<Vec<DecodeReport>> =
        point_images(config, point).map(|imgs| imgs.iter().map(|img| decode_image(img, code)).collect());
    match reports {
        Ok(reports) => SweepRow {
            point: *point,
            success_rate: Some(success_rate(&reports, code.len())),
            trials: reports.len(),
            images_decoded: reports.iter().filter(|r| r.decoded()).count(),
            error: None,
        },
        Err(e) => {
            log::warn!("grid point {point:?}: {e}");
            SweepRow {
                point: *point,
                success_rate: None,
                trials: config.trials_per_point,
                images_decoded: 0,
                error: Some(e.to_string()),
            }
        }
    }
}

/// Evaluates every grid point. Invalid points are reported in their row.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let rows = config
        .grid()
        .iter()
        .map(|p| {
            log::debug!("sweep point {p:?}");
            evaluate_point(config, p)
        })
        .collect();
    Ok(SweepResult { rows })
}
