use super::{histogram_equalize, GrayImage, Mask};
use crate::error::{Error, Result};
use crate::shutter::ColumnTrace;

/// Quantizes a real pixel value, rounding halves up.
pub fn round_half_up(v: f64) -> u8 {
    (v + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Masked composition before contrast enhancement: pixels inside the mask
/// take their column's trace value, the rest take `background`.
pub fn compose_unequalized(
    trace: &ColumnTrace,
    mask: &Mask,
    width: usize,
    height: usize,
    background: f64,
) -> Result<GrayImage> {
    if trace.len() != width {
        return Err(Error::TraceLengthMismatch {
            trace: trace.len(),
            lines: width,
        });
    }
    if mask.width() != width || mask.height() != height {
        return Err(Error::ImageShape {
            width,
            height,
            len: mask.width() * mask.height(),
        });
    }
    let column: Vec<u8> = trace.values.iter().map(|&v| round_half_up(v)).collect();
    let bg = round_half_up(background);
    let pixels = mask
        .bits()
        .iter()
        .enumerate()
        .map(|(i, &inside)| if inside { column[i % width] } else { bg })
        .collect();
    GrayImage::new(width, height, pixels)
}

/// [`compose_unequalized`] followed by full-frame histogram equalization.
pub fn compose_image(
    trace: &ColumnTrace,
    mask: &Mask,
    width: usize,
    height: usize,
    background: f64,
) -> Result<GrayImage> {
    Ok(histogram_equalize(&compose_unequalized(
        trace, mask, width, height, background,
    )?))
}
