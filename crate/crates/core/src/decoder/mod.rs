//! Detection pipeline: find the panel, average its readout lines, binarize,
//! turn runs into half-slots, synchronise on headers and decode.
//!
//! The decoder sees only pixels. It works the same on simulated frames and
//! on photographs.

mod otsu;
mod region;
mod runs;

pub use otsu::{otsu_histogram, otsu_threshold};
pub use region::{
    bright_region_mask, chessboard_distance, count_components, extract_roi, grow_to_single_contour, Contour,
    RegionOfInterest,
};
pub use runs::{binarize_and_runs, classify_slots, column_signal, slot_width, RunLength, SlotCalibration};

use crate::coding::{extract_code, header_positions, HalfSlotSequence, Payload};
use crate::error::Result;
use crate::imaging::GrayImage;

/// Share of the image taken as the brightest seed pixels.
pub const BRIGHT_FRACTION: f64 = 0.05;

/// Outcome of decoding one image against the transmitted code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub received_code: Option<Payload>,
    pub headers_found: usize,
    pub correct_bits: usize,
}

impl DecodeReport {
    pub fn absent() -> Self {
        DecodeReport {
            received_code: None,
            headers_found: 0,
            correct_bits: 0,
        }
    }

    pub fn decoded(&self) -> bool {
        self.received_code.is_some()
    }
}

/// Every intermediate product of a decode, for plotting and debugging.
#[derive(Debug, Clone)]
pub struct DecodeDetail {
    pub roi: RegionOfInterest,
    pub signal: Vec<f64>,
    pub runs: Vec<RunLength>,
    pub slots: HalfSlotSequence,
    pub headers_found: usize,
    pub received_code: Option<Payload>,
}

/// Runs the full pipeline for a code of `code_len` bits.
///
/// The first and last runs are cut by the region edges, so they are left
/// out of slot calibration and framing.
pub fn decode_detailed(img: &GrayImage, code_len: usize) -> Result<DecodeDetail> {
    let mask = bright_region_mask(img, BRIGHT_FRACTION);
    let contour = grow_to_single_contour(&mask)?;
    let (roi, sub) = extract_roi(img, &contour)?;
    let signal = column_signal(&sub);
    let runs = binarize_and_runs(&signal)?;
    let inner = if runs.len() > 2 {
        &runs[1..runs.len() - 1]
    } else {
        &runs[..]
    };
    let slots = classify_slots(inner)?;
    let headers_found = header_positions(&slots).len();
    let received_code = extract_code(&slots, code_len);
    Ok(DecodeDetail {
        roi,
        signal,
        runs,
        slots,
        headers_found,
        received_code,
    })
}

/// Decodes `img` and scores it against `expected`. Pipeline failures give
/// an absent code with zero correct bits.
pub fn decode_image(img: &GrayImage, expected: &Payload) -> DecodeReport {
    match decode_detailed(img, expected.len()) {
        Ok(d) => {
            let correct_bits = d.received_code.as_ref().map_or(0, |r| r.matching_bits(expected));
            DecodeReport {
                received_code: d.received_code,
                headers_found: d.headers_found,
                correct_bits,
            }
        }
        Err(e) => {
            log::debug!("decode failed: {e}");
            DecodeReport::absent()
        }
    }
}

/// Correct bits as a percentage of `images * code_len`. Zero for no images.
pub fn success_rate(reports: &[DecodeReport], code_len: usize) -> f64 {
    if reports.is_empty() || code_len == 0 {
        return 0.0;
    }
    let correct: usize = reports.iter().map(|r| r.correct_bits.min(code_len)).sum();
    correct as f64 / (reports.len() * code_len) as f64 * 100.0
}
