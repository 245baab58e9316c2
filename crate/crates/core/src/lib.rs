//! Rolling-shutter optical camera communication: image synthesis for an
//! OOK-modulated LED panel at any switching frequency, a thresholding
//! decoder, and success-rate sweeps.
//!
//! The pipeline is
//! [`coding`] → [`shutter`] (+ [`photometry`]) → [`imaging`] → [`decoder`],
//! with [`harness`] running it over parameter grids.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coding;
pub mod decoder;
pub mod error;
pub mod harness;
pub mod imaging;
pub mod photometry;
pub mod scene;
pub mod shutter;

pub use coding::{HalfSlotSequence, Level, Payload};
pub use error::{Error, Result};
pub use imaging::{GrayImage, Mask, ScenePose};
pub use photometry::{CameraModel, Environment, TransmitterModel};
pub use scene::{Scene, SimulatedFrame};
pub use shutter::{ColumnTrace, SignalTimeline};
