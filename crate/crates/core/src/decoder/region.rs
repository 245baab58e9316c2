//! Locating the transmitter: brightest-pixel mask, contour merging by
//! dilation, and the bounding rectangle.

use crate::error::{Error, Result};
use crate::imaging::{histogram, GrayImage, Mask};

/// Axis-aligned rectangle in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionOfInterest {
    pub left: usize,
    pub top: usize,
    pub width: usize,
    pub height: usize,
}

impl RegionOfInterest {
    pub fn area(&self) -> usize {
        self.width * self.height
    }
}

/// Marks every pixel at or above the highest threshold that still selects
/// at least `fraction` of the image. Ties at the threshold are all kept.
pub fn bright_region_mask(img: &GrayImage, fraction: f64) -> Mask {
    let hist = histogram(img);
    let target = (fraction * img.pixels().len() as f64).ceil().max(1.0) as u64;
    let mut acc = 0u64;
    let mut threshold = 0u8;
    for v in (0..=255u8).rev() {
        acc += hist[v as usize];
        if acc >= target {
            threshold = v;
            break;
        }
    }
    let bits = img.pixels().iter().map(|&p| p >= threshold).collect();
    Mask::from_bits(img.width(), img.height(), bits).expect("same shape")
}

/// Result of merging the bright mask into one contour.
#[derive(Debug, Clone)]
pub struct Contour {
    /// The single 8-connected component after dilation.
    pub region: Mask,
    /// Original mask pixels, all of which lie inside `region`.
    pub members: Mask,
    /// Dilations with a 3x3 structuring element that were needed.
    pub dilations: usize,
}

/// Dilates the mask until a single 8-connected component remains.
///
/// `k` dilations by a 3x3 square equal the set of pixels within chessboard
/// distance `k` of the mask, and the component count never increases with
/// `k`, so the smallest sufficient `k` is found by bisection over a distance
/// transform rather than by repeated dilation.
pub fn grow_to_single_contour(mask: &Mask) -> Result<Contour> {
    if mask.is_empty() {
        return Err(Error::NoBrightRegion);
    }
    let (w, h) = (mask.width(), mask.height());
    if count_components(w, h, |i| mask.bits()[i]) == 1 {
        return Ok(Contour {
            region: mask.clone(),
            members: mask.clone(),
            dilations: 0,
        });
    }
    let dist = chessboard_distance(mask);
    let (mut lo, mut hi) = (0usize, w.max(h));
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if count_components(w, h, |i| dist[i] <= mid as u32) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let bits = dist.iter().map(|&d| d <= hi as u32).collect();
    Ok(Contour {
        region: Mask::from_bits(w, h, bits)?,
        members: mask.clone(),
        dilations: hi,
    })
}

/// Tight rectangle around the contour's bright pixels, and the matching
/// crop of the original image.
pub fn extract_roi(img: &GrayImage, contour: &Contour) -> Result<(RegionOfInterest, GrayImage)> {
    let (left, top, width, height) = contour.members.bounding_box().ok_or(Error::NoBrightRegion)?;
    let roi = RegionOfInterest {
        left,
        top,
        width,
        height,
    };
    Ok((roi, img.crop(left, top, width, height)))
}

/// Chessboard distance from every pixel to the nearest set pixel.
pub fn chessboard_distance(mask: &Mask) -> Vec<u32> {
    let (w, h) = (mask.width(), mask.height());
    let inf = u32::MAX / 2;
    let mut d: Vec<u32> = mask.bits().iter().map(|&b| if b { 0 } else { inf }).collect();
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let mut v = d[i];
            if x > 0 {
                v = v.min(d[i - 1] + 1);
            }
            if y > 0 {
                let up = i - w;
                v = v.min(d[up] + 1);
                if x > 0 {
                    v = v.min(d[up - 1] + 1);
                }
                if x + 1 < w {
                    v = v.min(d[up + 1] + 1);
                }
            }
            d[i] = v;
        }
    }
    for y in (0..h).rev() {
        for x in (0..w).rev() {
            let i = y * w + x;
            let mut v = d[i];
            if x + 1 < w {
                v = v.min(d[i + 1] + 1);
            }
            if y + 1 < h {
                let down = i + w;
                v = v.min(d[down] + 1);
                if x > 0 {
                    v = v.min(d[down - 1] + 1);
                }
                if x + 1 < w {
                    v = v.min(d[down + 1] + 1);
                }
            }
            d[i] = v;
        }
    }
    d
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Number of 8-connected components of the pixels for which `set` holds,
/// labelled run by run.
pub fn count_components(w: usize, h: usize, set: impl Fn(usize) -> bool) -> usize {
    // (x_start, x_end_inclusive, label)
    let mut prev: Vec<(usize, usize, usize)> = Vec::new();
    let mut cur: Vec<(usize, usize, usize)> = Vec::new();
    let mut parent: Vec<usize> = Vec::new();
    for y in 0..h {
        cur.clear();
        let base = y * w;
        let mut x = 0;
        while x < w {
            if !set(base + x) {
                x += 1;
                continue;
            }
            let start = x;
            while x < w && set(base + x) {
                x += 1;
            }
            let label = parent.len();
            parent.push(label);
            cur.push((start, x - 1, label));
        }
        let mut j = 0;
        for &(s, e, label) in &cur {
            while j < prev.len() && prev[j].1 + 1 < s {
                j += 1;
            }
            let mut k = j;
            while k < prev.len() && prev[k].0 <= e + 1 {
                let (a, b) = (find(&mut parent, label), find(&mut parent, prev[k].2));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
                k += 1;
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask_from(rows: &[&str]) -> Mask {
        let h = rows.len();
        let w = rows[0].len();
        let bits = rows.iter().flat_map(|r| r.chars().map(|c| c == '#')).collect();
        Mask::from_bits(w, h, bits).unwrap()
    }

    #[test]
    fn constant_image_selects_everything() {
        let img = GrayImage::filled(10, 10, 77);
        assert_eq!(bright_region_mask(&img, 0.05).count(), 100);
    }

    #[test]
    fn exact_five_percent() {
        let mut img = GrayImage::filled(20, 10, 0);
        for x in 0..10usize {
            img.set(x, 3, 255);
        }
        let m = bright_region_mask(&img, 0.05);
        assert_eq!(m.count(), 10);
        assert!((0..10).all(|x| m.get(x, 3)));
    }

    #[test]
    fn connected_mask_is_unchanged() {
        let m = mask_from(&["....", ".##.", ".#..", "...."]);
        let c = grow_to_single_contour(&m).unwrap();
        assert_eq!(c.dilations, 0);
        assert_eq!(c.region, m);
    }

    #[test]
    fn two_pixel_gap_needs_one_dilation() {
        let m = mask_from(&["..........", ".##..##...", ".##..##...", ".........."]);
        let c = grow_to_single_contour(&m).unwrap();
        assert_eq!(c.dilations, 1);
        assert_eq!(count_components(10, 4, |i| c.region.bits()[i]), 1);
    }

    #[test]
    fn matches_iterative_dilation() {
        let m = mask_from(&[
            "#.........",
            "..........",
            "......#...",
            "..........",
            "..........",
            ".........#",
        ]);
        // brute force: dilate until connected
        let mut cur = m.clone();
        let mut iters = 0;
        while count_components(10, 6, |i| cur.bits()[i]) > 1 {
            let mut next = cur.clone();
            for y in 0..6usize {
                for x in 0..10usize {
                    let hit = (y.saturating_sub(1)..(y + 2).min(6))
                        .any(|yy| (x.saturating_sub(1)..(x + 2).min(10)).any(|xx| cur.get(xx, yy)));
                    next.set(x, y, hit);
                }
            }
            cur = next;
            iters += 1;
        }
        let c = grow_to_single_contour(&m).unwrap();
        assert_eq!(c.dilations, iters);
        assert_eq!(c.region, cur);
    }

    #[test]
    fn full_mask_stays_full() {
        let m = Mask::from_bits(5, 4, vec![true; 20]).unwrap();
        assert_eq!(grow_to_single_contour(&m).unwrap().region.count(), 20);
    }

    #[test]
    fn empty_mask_is_error() {
        assert!(matches!(
            grow_to_single_contour(&Mask::empty(3, 3)),
            Err(Error::NoBrightRegion)
        ));
    }

    #[test]
    fn roi_of_blob() {
        let m = mask_from(&["......", "..###.", "..###.", "......"]);
        let img = GrayImage::filled(6, 4, 9);
        let (roi, sub) = extract_roi(&img, &grow_to_single_contour(&m).unwrap()).unwrap();
        assert_eq!((roi.left, roi.top, roi.width, roi.height), (2, 1, 3, 2));
        assert_eq!(sub.pixels().len(), 6);
        let one = mask_from(&["...", ".#.", "..."]);
        let (roi, _) = extract_roi(&GrayImage::filled(3, 3, 0), &grow_to_single_contour(&one).unwrap()).unwrap();
        assert_eq!(roi.area(), 1);
    }

    #[test]
    fn diagonal_touch_is_connected() {
        assert_eq!(count_components(2, 2, |i| i == 0 || i == 3), 1);
        assert_eq!(count_components(3, 1, |i| i != 1), 2);
    }
}
