//! One simulated capture: trace, panel mask and final equalized image.

use crate::error::Result;
use crate::imaging::{compose_image, project_corners, rasterize_mask, GrayImage, Mask, ScenePose};
use crate::photometry::{pixel_value_off, pixel_value_on, CameraModel, Environment, TransmitterModel};
use crate::shutter::{simulate_column_trace, ColumnTrace, SignalTimeline};

/// Everything needed to synthesize a capture, apart from the phase.
#[derive(Debug, Clone)]
pub struct Scene {
    pub camera: CameraModel,
    pub transmitter: TransmitterModel,
    pub environment: Environment,
    pub pose: ScenePose,
}

#[derive(Debug, Clone)]
pub struct SimulatedFrame {
    pub image: GrayImage,
    pub trace: ColumnTrace,
    pub mask: Mask,
    pub corners: [[f64; 2]; 4],
    pub pv_max: f64,
    pub pv_min: f64,
}

impl Scene {
    pub fn validate(&self) -> Result<()> {
        self.camera.validate()?;
        self.transmitter.validate()?;
        self.environment.validate()
    }

    /// Projected panel mask; independent of the phase.
    pub fn panel_mask(&self) -> Result<([[f64; 2]; 4], Mask)> {
        let corners = project_corners(&self.camera, &self.transmitter, &self.pose)?;
        Ok((corners, rasterize_mask(&corners, self.camera.columns, self.camera.rows)))
    }

    /// Duration of one transmitted frame, the range phases are drawn from.
    pub fn frame_duration(&self) -> Result<f64> {
        Ok(SignalTimeline::for_transmitter(&self.transmitter, 0.0)?.frame_duration())
    }

    pub fn simulate(&self, phase: f64) -> Result<SimulatedFrame> {
        let (corners, mask) = self.panel_mask()?;
        self.simulate_with_mask(phase, corners, mask)
    }

    /// As [`Scene::simulate`], reusing a mask from [`Scene::panel_mask`].
    pub fn simulate_with_mask(&self, phase: f64, corners: [[f64; 2]; 4], mask: Mask) -> Result<SimulatedFrame> {
        self.validate()?;
        let pv_max = pixel_value_on(&self.camera, &self.transmitter, &self.environment)?;
        let pv_min = pixel_value_off(&self.camera, &self.environment)?;
        let timeline = SignalTimeline::for_transmitter(&self.transmitter, phase)?;
        let trace = simulate_column_trace(&self.camera, &timeline, pv_max, pv_min)?;
        let image = compose_image(&trace, &mask, self.camera.columns, self.camera.rows, pv_min)?;
        Ok(SimulatedFrame {
            image,
            trace,
            mask,
            corners,
            pv_max,
            pv_min,
        })
    }
}
