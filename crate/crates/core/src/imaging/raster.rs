use super::projection::polygon_area;
use super::Mask;

/// Scanline fill of a quadrilateral: a pixel is set when its centre lies
/// inside the polygon. Pixels outside the raster are dropped.
pub fn rasterize_mask(corners: &[[f64; 2]; 4], width: usize, height: usize) -> Mask {
    let mut mask = Mask::empty(width, height);
    if polygon_area(corners) <= 0.0 {
        log::warn!("degenerate panel quadrilateral; mask is empty");
        return mask;
    }
    let mut xs: Vec<f64> = Vec::with_capacity(4);
    for y in 0..height {
        let yc = y as f64 + 0.5;
        xs.clear();
        for i in 0..4 {
            let (a, b) = (corners[i], corners[(i + 1) % 4]);
            // half-open in y so shared vertices are counted once
            if (a[1] <= yc && yc < b[1]) || (b[1] <= yc && yc < a[1]) {
                xs.push(a[0] + (yc - a[1]) * (b[0] - a[0]) / (b[1] - a[1]));
            }
        }
        xs.sort_by(|p, q| p.total_cmp(q));
        for span in xs.chunks_exact(2) {
            // centres x + 0.5 with span[0] < x + 0.5 < span[1]
            let lo = (span[0] - 0.5).floor() + 1.0;
            let hi = (span[1] - 0.5).ceil() - 1.0;
            let lo = lo.max(0.0);
            let hi = hi.min(width as f64 - 1.0);
            if lo > hi {
                continue;
            }
            for x in lo as usize..=hi as usize {
                mask.set(x, y, true);
            }
        }
    }
    mask
}
