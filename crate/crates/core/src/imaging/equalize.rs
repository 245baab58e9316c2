use super::GrayImage;

pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut h = [0u64; 256];
    for &p in img.pixels() {
        h[p as usize] += 1;
    }
    h
}

/// Cumulative-distribution remap table. The lowest occupied intensity maps
/// to 0 and the highest to 255; a single-valued histogram maps to itself.
pub fn equalization_map(hist: &[u64; 256]) -> [u8; 256] {
    let total: u64 = hist.iter().sum();
    let mut map = [0u8; 256];
    for (i, m) in map.iter_mut().enumerate() {
        *m = i as u8;
    }
    let Some(first) = hist.iter().position(|&c| c > 0) else {
        return map;
    };
    let cdf_min = hist[first];
    if total == cdf_min {
        return map;
    }
    let denom = (total - cdf_min) as f64;
    let mut cdf = 0u64;
    for (i, &c) in hist.iter().enumerate() {
        cdf += c;
        let scaled = (cdf.saturating_sub(cdf_min)) as f64 / denom * 255.0;
        map[i] = (scaled + 0.5).floor().clamp(0.0, 255.0) as u8;
    }
    map
}

pub fn histogram_equalize(img: &GrayImage) -> GrayImage {
    let map = equalization_map(&histogram(img));
    let pixels = img.pixels().iter().map(|&p| map[p as usize]).collect();
    GrayImage::new(img.width(), img.height(), pixels).expect("same shape")
}
