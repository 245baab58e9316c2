//! Otsu's method. Between-class variance is compared through the scaled
//! form `(s0*n1 - s1*n0)^2 / (n0*n1)`, which ranks candidates identically.
//! Histogram scores are compared in integer arithmetic so ties are exact.

use std::cmp::Ordering;

use crate::error::{Error, Result};

fn score(n0: f64, s0: f64, n1: f64, s1: f64) -> f64 {
    let d = s0 * n1 - s1 * n0;
    d * d / (n0 * n1)
}

// Histogram score as the fraction num/den.
#[derive(Clone, Copy)]
struct Score {
    num: u128,
    den: u128,
}

impl Score {
    fn new(n0: u128, s0: u128, n1: u128, s1: u128) -> Option<Score> {
        let d = (s0.checked_mul(n1)?).abs_diff(s1.checked_mul(n0)?);
        Some(Score {
            num: d.checked_mul(d)?,
            den: n0.checked_mul(n1)?,
        })
    }

    fn cmp(&self, other: &Score) -> Ordering {
        match (self.num.checked_mul(other.den), other.num.checked_mul(self.den)) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => (self.num as f64 / self.den as f64).total_cmp(&(other.num as f64 / other.den as f64)),
        }
    }
}

/// Otsu threshold over a histogram. Returns the bin index `k` such that bins
/// `>= k` form the upper class. Among equal maxima the lowest `k` wins.
pub fn otsu_histogram(hist: &[u64]) -> Result<usize> {
    if hist.iter().filter(|&&c| c > 0).count() < 2 {
        return Err(Error::DegenerateHistogram);
    }
    let n: u128 = hist.iter().map(|&c| c as u128).sum();
    let s: u128 = hist.iter().enumerate().map(|(i, &c)| i as u128 * c as u128).sum();
    let (mut n0, mut s0) = (0u128, 0u128);
    let mut best: Option<(usize, Score)> = None;
    for k in 1..hist.len() {
        n0 += hist[k - 1] as u128;
        s0 += (k - 1) as u128 * hist[k - 1] as u128;
        let n1 = n - n0;
        if n0 == 0 || n1 == 0 {
            continue;
        }
        let v = Score::new(n0, s0, n1, s - s0).ok_or(Error::DegenerateHistogram)?;
        if best.is_none_or(|(_, b)| v.cmp(&b) == Ordering::Greater) {
            best = Some((k, v));
        }
    }
    best.map(|(k, _)| k).ok_or(Error::DegenerateHistogram)
}

/// Otsu threshold over real samples. Candidate cuts lie midway between
/// consecutive distinct values; samples `>= threshold` form the upper class.
/// Among equal maxima the lowest threshold wins.
pub fn otsu_threshold(values: &[f64]) -> Result<f64> {
    let mut sorted: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let s: f64 = sorted.iter().sum();
    let (mut n0, mut s0) = (0.0, 0.0);
    let mut best: Option<(f64, f64)> = None;
    let mut i = 0;
    let mut prev = f64::NAN;
    while i < sorted.len() {
        let v = sorted[i];
        if n0 > 0.0 {
            let vb = score(n0, s0, n - n0, s - s0);
            if best.is_none_or(|(_, b)| vb > b) {
                best = Some((prev + (v - prev) / 2.0, vb));
            }
        }
        prev = v;
        while i < sorted.len() && sorted[i] == v {
            n0 += 1.0;
            s0 += v;
            i += 1;
        }
    }
    best.map(|(t, _)| t).ok_or(Error::DegenerateHistogram)
}
