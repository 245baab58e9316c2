//! Payload bits, differential Manchester line coding and framing.
//!
//! Each payload bit occupies two half-slots. The line level always flips at
//! the start of a bit; a second flip in the middle of the bit marks a `0`.
//! Runs of identical levels inside an encoded payload are therefore at most
//! two half-slots long, which leaves a run of three ON half-slots free to act
//! as the frame header.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of ON half-slots forming the frame header.
pub const HEADER_LEN: usize = 3;

/// Line level of one OOK half-slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Off,
    On,
}

impl Level {
    pub fn flip(self) -> Level {
        match self {
            Level::Off => Level::On,
            Level::On => Level::Off,
        }
    }

    pub fn is_on(self) -> bool {
        self == Level::On
    }

    pub fn from_bit(bit: u8) -> Level {
        if bit == 0 {
            Level::Off
        } else {
            Level::On
        }
    }
}

/// A non-empty sequence of binary symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Payload(Vec<u8>);

impl Payload {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyPayload);
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidSymbol(char::from(b'0' + b.min(9))));
        }
        Ok(Payload(bits))
    }

    /// The `len` low-order bits of `value`, most significant first.
    pub fn from_u32(value: u32, len: usize) -> Result<Self> {
        let bits = (0..len).rev().map(|i| ((value >> i) & 1) as u8).collect();
        Payload::new(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positionwise agreement with `other`, counted over the shorter length.
    pub fn matching_bits(&self, other: &Payload) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a == b).count()
    }
}

impl FromStr for Payload {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidSymbol(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Payload::new(bits)
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Ordered line levels, one per half-slot.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HalfSlotSequence(Vec<Level>);

impl HalfSlotSequence {
    pub fn new(slots: Vec<Level>) -> Self {
        HalfSlotSequence(slots)
    }

    pub fn slots(&self) -> &[Level] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &HalfSlotSequence) -> HalfSlotSequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        HalfSlotSequence(v)
    }

    /// Maximal runs of identical levels as `(level, length)`.
    pub fn runs(&self) -> Vec<(Level, usize)> {
        let mut out: Vec<(Level, usize)> = Vec::new();
        for &s in &self.0 {
            match out.last_mut() {
                Some((lvl, n)) if *lvl == s => *n += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    pub fn max_run(&self) -> usize {
        self.runs().iter().map(|&(_, n)| n).max().unwrap_or(0)
    }
}

impl From<Vec<Level>> for HalfSlotSequence {
    fn from(v: Vec<Level>) -> Self {
        HalfSlotSequence(v)
    }
}

/// Encodes `payload` starting from the line level `initial_level` that
/// precedes the first bit.
pub fn encode_diff_manchester(payload: &Payload, initial_level: Level) -> Result<HalfSlotSequence> {
    if payload.is_empty() {
        return Err(Error::EmptyPayload);
    }
    let mut level = initial_level;
    let mut slots = Vec::with_capacity(2 * payload.len());
    for &bit in payload.bits() {
        level = level.flip();
        slots.push(level);
        if bit == 0 {
            level = level.flip();
        }
        slots.push(level);
    }
    Ok(HalfSlotSequence(slots))
}

/// Decodes half-slot pairs: equal halves carry a `1`, differing halves a `0`.
/// The absolute polarity of the input does not matter.
pub fn decode_diff_manchester(slots: &HalfSlotSequence) -> Result<Payload> {
    let n = slots.len();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::MisalignedSlots(n));
    }
    let bits = slots
        .slots()
        .chunks_exact(2)
        .map(|pair| u8::from(pair[0] == pair[1]))
        .collect();
    Payload::new(bits)
}

/// Header of three ON half-slots followed by the encoded payload, whose
/// first half-slot is always OFF.
///
/// Frames are transmitted back to back. When the payload ends on an ON
/// half-slot the next header merges with it into a longer ON run, so a
/// header is recognised as the last three slots of any ON run of three or
/// more (see [`header_positions`]).
pub fn build_frame(payload: &Payload) -> Result<HalfSlotSequence> {
    let body = encode_diff_manchester(payload, Level::On)?;
    let mut slots = vec![Level::On; HEADER_LEN];
    slots.extend_from_slice(body.slots());
    Ok(HalfSlotSequence(slots))
}

/// Start indices of every header in `slots`.
///
/// Encoded payload runs never exceed two, so any ON run of at least three
/// slots ends with a header; the slots before its last three belong to the
/// preceding payload.
pub fn header_positions(slots: &HalfSlotSequence) -> Vec<usize> {
    let mut out = Vec::new();
    let mut pos = 0;
    for (level, n) in slots.runs() {
        if level.is_on() && n >= HEADER_LEN {
            out.push(pos + n - HEADER_LEN);
        }
        pos += n;
    }
    out
}

/// Slots strictly between the first two headers, decoded as a payload of
/// `code_len` bits. Returns `None` when fewer than two headers are present
/// or the gap has the wrong length.
pub fn extract_code(slots: &HalfSlotSequence, code_len: usize) -> Option<Payload> {
    let headers = header_positions(slots);
    if headers.len() < 2 {
        return None;
    }
    let start = headers[0] + HEADER_LEN;
    let end = headers[1];
    if end < start || end - start != 2 * code_len {
        log::debug!(
            "malformed frame: {} slots between headers, expected {}",
            end.saturating_sub(start),
            2 * code_len
        );
        return None;
    }
    decode_diff_manchester(&HalfSlotSequence(slots.slots()[start..end].to_vec())).ok()
}
