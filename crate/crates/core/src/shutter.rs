//! Rolling-shutter column synthesis.
//!
//! Column `i` integrates light over `[i * t_r, i * t_r + t)`. Its value is the
//! exposure-weighted mix of the steady on and off pixel values, with the
//! weights given by the exact on and off durations inside that window.

use std::io::Write;

use crate::coding::{build_frame, HalfSlotSequence, Level};
use crate::error::{Error, Result};
use crate::photometry::{CameraModel, TransmitterModel};

/// Cyclic piecewise-constant OOK waveform.
#[derive(Debug, Clone)]
pub struct SignalTimeline {
    frame: HalfSlotSequence,
    half_slot_duration: f64,
    phase: f64,
    // on_prefix[j] = number of ON slots in frame[..j]
    on_prefix: Vec<usize>,
}

impl SignalTimeline {
    /// `phase` is the frame time that coincides with camera time zero.
    pub fn new(frame: HalfSlotSequence, half_slot_duration: f64, phase: f64) -> Result<Self> {
        if frame.is_empty() {
            return Err(Error::InvalidTimeline("empty frame"));
        }
        if !(half_slot_duration > 0.0) || !half_slot_duration.is_finite() {
            return Err(Error::InvalidTimeline("half-slot duration must be positive"));
        }
        let period = half_slot_duration * frame.len() as f64;
        if !(0.0..period).contains(&phase) {
            return Err(Error::InvalidTimeline("phase must lie within one frame duration"));
        }
        let mut on_prefix = Vec::with_capacity(frame.len() + 1);
        on_prefix.push(0);
        for s in frame.slots() {
            on_prefix.push(on_prefix.last().unwrap() + usize::from(s.is_on()));
        }
        Ok(SignalTimeline {
            frame,
            half_slot_duration,
            phase,
            on_prefix,
        })
    }

    /// Cyclic framed payload of `tx` at its switching frequency.
    pub fn for_transmitter(tx: &TransmitterModel, phase: f64) -> Result<Self> {
        SignalTimeline::new(build_frame(&tx.payload)?, tx.switching_period(), phase)
    }

    /// A timeline that never switches.
    pub fn constant(level: Level, half_slot_duration: f64) -> Result<Self> {
        SignalTimeline::new(HalfSlotSequence::new(vec![level]), half_slot_duration, 0.0)
    }

    pub fn frame(&self) -> &HalfSlotSequence {
        &self.frame
    }

    pub fn half_slot_duration(&self) -> f64 {
        self.half_slot_duration
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn frame_duration(&self) -> f64 {
        self.half_slot_duration * self.frame.len() as f64
    }

    /// Level at camera time `t`.
    pub fn level_at(&self, t: f64) -> Level {
        let n = self.frame.len();
        let tau = (t + self.phase).rem_euclid(self.frame_duration());
        let j = ((tau / self.half_slot_duration) as usize).min(n - 1);
        self.frame.slots()[j]
    }

    /// Total ON time over frame time `[0, tau)`.
    fn cumulative_on(&self, tau: f64) -> f64 {
        let n = self.frame.len();
        let h = self.half_slot_duration;
        let period = self.frame_duration();
        let cycles = (tau / period).floor();
        let r = (tau - cycles * period).clamp(0.0, period);
        let j = ((r / h) as usize).min(n - 1);
        let partial = if self.frame.slots()[j].is_on() {
            (r - j as f64 * h).max(0.0)
        } else {
            0.0
        };
        cycles * self.on_prefix[n] as f64 * h + self.on_prefix[j] as f64 * h + partial
    }
}

/// ON time within the camera-time window `[start, start + duration)`.
pub fn on_time_in_window(timeline: &SignalTimeline, start: f64, duration: f64) -> Result<f64> {
    if !(duration > 0.0) {
        return Err(Error::NonPositiveDuration(duration));
    }
    let a = start + timeline.phase;
    let on = timeline.cumulative_on(a + duration) - timeline.cumulative_on(a);
    Ok(on.clamp(0.0, duration))
}

/// Per-column simulated pixel values along the readout axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnTrace {
    pub values: Vec<f64>,
}

impl ColumnTrace {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `column_index,value` CSV.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "column_index,value")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{i},{v:.6}")?;
        }
        Ok(())
    }
}

/// Exposure-weighted average of `pv_max` and `pv_min` for every column.
pub fn simulate_column_trace(
    cam: &CameraModel,
    timeline: &SignalTimeline,
    pv_max: f64,
    pv_min: f64,
) -> Result<ColumnTrace> {
    cam.validate()?;
    let t = cam.exposure_time;
    let values = (0..cam.columns)
        .map(|i| {
            let t_on = on_time_in_window(timeline, i as f64 * cam.readout_time, t)?;
            let t_off = t - t_on;
            let v = (pv_max * t_on + pv_min * t_off) / t;
            Ok(v.clamp(pv_min.min(pv_max), pv_max.max(pv_min)))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ColumnTrace { values })
}

/// Column counts of the band model: steady-state columns per half-slot and
/// columns spent ramping between levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandPattern {
    pub complete: f64,
    pub transition: f64,
}

/// Band model lengths for half-slot duration `t_led`. Only defined while the
/// exposure does not exceed `t_led`.
pub fn sota_band_pattern(cam: &CameraModel, t_led: f64) -> Result<BandPattern> {
    if !(cam.readout_time > 0.0) || !(cam.exposure_time > 0.0) {
        return Err(Error::InvalidCamera("exposure and readout time must be positive"));
    }
    if t_led < cam.exposure_time {
        return Err(Error::SotaUndefined {
            t_led,
            exposure: cam.exposure_time,
        });
    }
    Ok(BandPattern {
        complete: (t_led - cam.exposure_time) / cam.readout_time,
        transition: cam.exposure_time / cam.readout_time,
    })
}

/// Band-model trace: each half-slot contributes a plateau of `complete`
/// columns at its own level followed by `transition` columns ramping
/// linearly toward the next half-slot's level. Laid out in column units.
pub fn sota_column_trace(
    cam: &CameraModel,
    timeline: &SignalTimeline,
    pv_max: f64,
    pv_min: f64,
) -> Result<ColumnTrace> {
    let bands = sota_band_pattern(cam, timeline.half_slot_duration)?;
    let slot_cols = bands.complete + bands.transition;
    let slots = timeline.frame.slots();
    let n = slots.len();
    let value = |l: Level| if l.is_on() { pv_max } else { pv_min };
    let offset = timeline.phase / cam.readout_time;
    let values = (0..cam.columns)
        .map(|i| {
            let c = i as f64 + offset;
            let k = (c / slot_cols).floor();
            let o = c - k * slot_cols;
            let j = (k as usize) % n;
            let here = value(slots[j]);
            if o < bands.complete {
                here
            } else {
                let next = value(slots[(j + 1) % n]);
                let frac = ((o - bands.complete) / bands.transition).clamp(0.0, 1.0);
                here + (next - here) * frac
            }
        })
        .collect();
    Ok(ColumnTrace { values })
}
