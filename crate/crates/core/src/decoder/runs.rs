use super::otsu::otsu_threshold;
use crate::coding::{HalfSlotSequence, Level};
use crate::error::{Error, Result};
use crate::imaging::GrayImage;

/// A maximal run of identical binarized samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLength {
    pub level: Level,
    pub length: usize,
}

impl RunLength {
    pub fn new(level: Level, length: usize) -> Self {
        RunLength { level, length }
    }
}

/// Mean intensity of every readout line (image column) of `roi`.
pub fn column_signal(roi: &GrayImage) -> Vec<f64> {
    let mut sums = vec![0u64; roi.width()];
    for y in 0..roi.height() {
        for (s, &p) in sums.iter_mut().zip(roi.row(y)) {
            *s += p as u64;
        }
    }
    let h = roi.height().max(1) as f64;
    sums.into_iter().map(|s| s as f64 / h).collect()
}

/// Otsu-binarizes `signal` (samples at or above the threshold are ON) and
/// collapses it into alternating runs.
pub fn binarize_and_runs(signal: &[f64]) -> Result<Vec<RunLength>> {
    if signal.len() < 2 {
        return Err(Error::SignalTooShort(signal.len()));
    }
    let t = otsu_threshold(signal)?;
    let mut runs: Vec<RunLength> = Vec::new();
    for &v in signal {
        let level = if v >= t { Level::On } else { Level::Off };
        match runs.last_mut() {
            Some(r) if r.level == level => r.length += 1,
            _ => runs.push(RunLength::new(level, 1)),
        }
    }
    Ok(runs)
}

/// Per-level calibration of run lengths against half-slot counts.
///
/// Binarizing a box-filtered, equalized signal moves every edge by roughly
/// the same amount, so ON runs come out shorter and OFF runs longer by a
/// constant. Lengths are modelled as `n * width + bias(level)`. The shortest
/// run of each level anchors a provisional width; runs within half of it of
/// their level's shortest are single half-slots, and the slot width is the
/// mean of the two levels' single lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotCalibration {
    pub single_on: f64,
    pub single_off: f64,
    pub width: f64,
}

impl SlotCalibration {
    pub fn from_runs(runs: &[RunLength]) -> Result<Self> {
        let mut distinct: Vec<usize> = runs.iter().map(|r| r.length).collect();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::CannotCalibrate);
        }
        let shortest = |level| {
            runs.iter()
                .filter(|r| r.level == level)
                .map(|r| r.length as f64)
                .reduce(f64::min)
        };
        let (min_on, min_off) = match (shortest(Level::On), shortest(Level::Off)) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => (a, a),
            (None, Some(b)) => (b, b),
            (None, None) => return Err(Error::CannotCalibrate),
        };
        let provisional = (min_on + min_off) / 2.0;
        let single_on = single_length(runs, Level::On, min_on + provisional / 2.0).unwrap_or(min_on);
        let single_off = single_length(runs, Level::Off, min_off + provisional / 2.0).unwrap_or(min_off);
        let width = (single_on + single_off) / 2.0;
        if !(width > 0.0) {
            return Err(Error::CannotCalibrate);
        }
        Ok(SlotCalibration {
            single_on,
            single_off,
            width,
        })
    }

    /// Half-slots spanned by a run, at least one.
    pub fn slots(&self, run: &RunLength) -> usize {
        let single = if run.level.is_on() {
            self.single_on
        } else {
            self.single_off
        };
        let extra = ((run.length as f64 - single) / self.width + 0.5).floor();
        (1.0 + extra).max(1.0) as usize
    }
}

// Mean length of one level's runs shorter than `limit`.
fn single_length(runs: &[RunLength], level: Level, limit: f64) -> Option<f64> {
    let short: Vec<usize> = runs
        .iter()
        .filter(|r| r.level == level && (r.length as f64) < limit)
        .map(|r| r.length)
        .collect();
    if short.is_empty() {
        return None;
    }
    Some(short.iter().sum::<usize>() as f64 / short.len() as f64)
}

/// Estimated width of one half-slot, in samples.
pub fn slot_width(runs: &[RunLength]) -> Result<f64> {
    SlotCalibration::from_runs(runs).map(|c| c.width)
}

/// Converts run lengths into half-slots using [`SlotCalibration`].
pub fn classify_slots(runs: &[RunLength]) -> Result<HalfSlotSequence> {
    let cal = SlotCalibration::from_runs(runs)?;
    let mut slots = Vec::new();
    for r in runs {
        slots.extend(std::iter::repeat_n(r.level, cal.slots(r)));
    }
    Ok(HalfSlotSequence::new(slots))
}
