use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the simulation and decoding pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty payload")]
    EmptyPayload,
    #[error("invalid payload symbol {0:?}; expected '0' or '1'")]
    InvalidSymbol(char),
    #[error("misaligned slots: {0} half-slots is not an even count of at least 2")]
    MisalignedSlots(usize),
    #[error("invalid photometric parameter: {0}")]
    InvalidPhotometry(&'static str),
    #[error("invalid camera parameter: {0}")]
    InvalidCamera(&'static str),
    #[error("invalid signal timeline: {0}")]
    InvalidTimeline(&'static str),
    #[error("exposure window duration must be positive, got {0}")]
    NonPositiveDuration(f64),
    #[error("SOTA undefined beyond exposure limit (t_LED {t_led:e} s < exposure {exposure:e} s)")]
    SotaUndefined { t_led: f64, exposure: f64 },
    #[error("distance must be positive, got {0} m")]
    NonPositiveDistance(f64),
    #[error("trace length {trace} does not match raster readout lines {lines}")]
    TraceLengthMismatch { trace: usize, lines: usize },
    #[error("image dimensions {width}x{height} do not match {len} pixels")]
    ImageShape { width: usize, height: usize, len: usize },
    #[error("malformed image at byte {offset}: {reason}")]
    MalformedImage { offset: usize, reason: String },
    #[error("unsupported bit depth: maxval {0}")]
    UnsupportedDepth(u32),
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("degenerate histogram")]
    DegenerateHistogram,
    #[error("no bright region")]
    NoBrightRegion,
    #[error("cannot calibrate slot width")]
    CannotCalibrate,
    #[error("signal too short: {0} samples")]
    SignalTooShort(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
