use crate::error::{Error, Result};
use crate::photometry::{CameraModel, TransmitterModel};

/// Camera placement relative to the panel. The optical axis is perpendicular
/// to the panel plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenePose {
    /// Meters from the camera centre to the panel plane.
    pub distance: f64,
    /// Meters, panel centre relative to the optical axis.
    pub lateral_offset: (f64, f64),
}

impl ScenePose {
    pub fn new(distance: f64, lateral_offset: (f64, f64)) -> Self {
        ScenePose {
            distance,
            lateral_offset,
        }
    }
}

/// Pinhole projection of the four panel corners to pixel coordinates.
pub fn project_corners(cam: &CameraModel, tx: &TransmitterModel, pose: &ScenePose) -> Result<[[f64; 2]; 4]> {
    let d = pose.distance;
    if !(d > 0.0) {
        return Err(Error::NonPositiveDistance(d));
    }
    let (cx, cy) = cam.principal_point;
    let (ox, oy) = pose.lateral_offset;
    let f = cam.focal_length_px;
    Ok(tx.corners.map(|[x, y]| [f * (x + ox) / d + cx, f * (y + oy) / d + cy]))
}

/// Unsigned shoelace area of a polygon.
pub fn polygon_area(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (points[i], points[(i + 1) % n]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum();
    twice.abs() / 2.0
}
