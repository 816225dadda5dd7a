//! Binary PPM (P6, maxval 255). On disk pixels are interleaved RGB; in
//! memory they are channel-planar.

use std::path::Path;

use crate::error::{Error, Result};
use crate::image::{Image, Shape};

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderCursor<'_> {
    fn malformed(&self, reason: impl Into<String>) -> Error {
        Error::MalformedHeader { offset: self.pos as u64, reason: reason.into() }
    }

    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(&b) = self.bytes.get(self.pos).filter(|b| b.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as usize))
                .ok_or_else(|| self.malformed(format!("{what} overflows")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.malformed(format!("expected {what}")));
        }
        Ok(value)
    }
}

pub fn decode_ppm(bytes: &[u8]) -> Result<Image> {
    match bytes.get(..2) {
        Some(b"P6") => {}
        Some([b'P', d]) if d.is_ascii_digit() => {
            return Err(Error::UnsupportedFormat(format!("P{} netpbm, only binary P6 is supported", *d as char)))
        }
        _ => return Err(Error::UnsupportedFormat("not a PPM file".into())),
    }
    let mut cur = HeaderCursor { bytes, pos: 2 };
    if !bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(cur.malformed("expected whitespace after magic"));
    }
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(cur.malformed("zero image dimension"));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedFormat(format!("maxval {maxval}, only 255 is supported")));
    }
    if !bytes.get(cur.pos).is_some_and(|b| b.is_ascii_whitespace()) {
        return Err(cur.malformed("expected single whitespace before raster"));
    }
    let body = &bytes[cur.pos + 1..];
    let shape = Shape::new(height, width, 3);
    let expected = height
        .checked_mul(width)
        .and_then(|v| v.checked_mul(3))
        .ok_or_else(|| cur.malformed("image dimensions overflow"))?;
    if body.len() != expected {
        return Err(Error::SizeMismatch { expected: expected as u64, actual: body.len() as u64 });
    }
    let n = shape.plane_len();
    let mut data = vec![0u8; expected];
    for (px, rgb) in body.chunks_exact(3).enumerate() {
        data[px] = rgb[0];
        data[n + px] = rgb[1];
        data[2 * n + px] = rgb[2];
    }
    Image::new(shape, data)
}

pub fn encode_ppm(image: &Image) -> Result<Vec<u8>> {
    let shape = image.shape();
    if shape.channels != 3 {
        return Err(Error::UnsupportedFormat(format!("PPM needs 3 channels, image is {shape}")));
    }
    let mut out = format!("P6\n{} {}\n255\n", shape.width, shape.height).into_bytes();
    let n = shape.plane_len();
    let (r, g, b) = (image.channel(0), image.channel(1), image.channel(2));
    out.reserve(3 * n);
    for px in 0..n {
        out.extend_from_slice(&[r[px], g[px], b[px]]);
    }
    Ok(out)
}

pub fn read_ppm(path: impl AsRef<Path>) -> Result<Image> {
    decode_ppm(&std::fs::read(path)?)
}

pub fn write_ppm(image: &Image, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, encode_ppm(image)?)?;
    Ok(())
}
