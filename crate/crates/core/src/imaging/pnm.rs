//! Portable graymap (P5 binary, P2 ASCII) reading and P5 writing, with PNG
//! handled through the `image` crate.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::GrayImage;
use crate::error::{Error, Result};

/// Binary P5 encoding with maxval 255.
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn malformed(&self, reason: impl Into<String>) -> Error {
        Error::MalformedImage {
            offset: self.pos,
            reason: reason.into(),
        }
    }

    fn skip_space_and_comments(&mut self) {
        while self.pos < self.data.len() {
            let c = self.data[self.pos];
            if c == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.malformed(format!("expected {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedImage {
                offset: start,
                reason: format!("{what} out of range"),
            })
    }
}

/// Parses a P5 or P2 graymap. Maxvals below 255 are rescaled to 8 bits.
pub fn decode_pgm(data: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { data, pos: 0 };
    if data.len() < 2 || data[0] != b'P' || !(data[1] == b'5' || data[1] == b'2') {
        return Err(cur.malformed("missing P5/P2 magic"));
    }
    let ascii = data[1] == b'2';
    cur.pos = 2;
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::UnsupportedDepth(maxval));
    }
    if width == 0 || height == 0 {
        return Err(cur.malformed("zero image dimension"));
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| cur.malformed("image dimensions overflow"))?;
    let mut pixels = Vec::with_capacity(n);
    if ascii {
        for _ in 0..n {
            let v = cur.number("sample")?;
            if v > maxval {
                return Err(cur.malformed(format!("sample {v} exceeds maxval {maxval}")));
            }
            pixels.push(v as u8);
        }
    } else {
        if cur.pos >= data.len() || !data[cur.pos].is_ascii_whitespace() {
            return Err(cur.malformed("expected whitespace after maxval"));
        }
        cur.pos += 1;
        let body = &data[cur.pos..];
        if body.len() < n {
            cur.pos = data.len();
            return Err(cur.malformed(format!("truncated raster: {} of {n} bytes", body.len())));
        }
        pixels.extend_from_slice(&body[..n]);
    }
    if maxval != 255 {
        for p in &mut pixels {
            *p = ((*p as u32 * 255 + maxval / 2) / maxval) as u8;
        }
    }
    GrayImage::new(width, height, pixels)
}

fn decode_png(data: &[u8]) -> Result<GrayImage> {
    let img = image::load_from_memory_with_format(data, image::ImageFormat::Png)
        .map_err(|e| Error::UnsupportedFormat(e.to_string()))?;
    let bits = img.color().bits_per_pixel() / u16::from(img.color().channel_count());
    if bits != 8 {
        return Err(Error::UnsupportedDepth((1u32 << bits) - 1));
    }
    let luma = img.to_luma8();
    let (w, h) = luma.dimensions();
    GrayImage::new(w as usize, h as usize, luma.into_raw())
}

/// Reads a PGM or PNG file, sniffing the format from its leading bytes.
pub fn read_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let data = fs::read(path).map_err(|e| Error::io(path, e))?;
    if data.starts_with(b"\x89PNG") {
        decode_png(&data)
    } else {
        decode_pgm(&data)
    }
}

/// Writes P5, or an 8-bit grayscale PNG when the extension is `.png`.
pub fn write_image(path: impl AsRef<Path>, img: &GrayImage) -> Result<()> {
    let path = path.as_ref();
    let is_png = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("png"));
    let bytes = if is_png {
        let buf = image::GrayImage::from_raw(img.width() as u32, img.height() as u32, img.pixels().to_vec())
            .expect("shape checked at construction");
        let mut out = std::io::Cursor::new(Vec::new());
        buf.write_to(&mut out, image::ImageFormat::Png)
            .map_err(|e| Error::UnsupportedFormat(e.to_string()))?;
        out.into_inner()
    } else {
        encode_pgm(img)
    };
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(&bytes).map_err(|e| Error::io(path, e))
}
