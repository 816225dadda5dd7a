//! SAUG1 batch container.
//!
//! ```text
//! offset  size         field
//! 0       5            magic "SAUG1"
//! 5       4            n          u32 LE, sample count
//! 9       4            h          u32 LE
//! 13      4            w          u32 LE
//! 17      4            c          u32 LE
//! 21      4            label_dim  u32 LE
//! 25      n*h*w*c      images, channel-planar per sample
//! ...     n*label_dim  label bytes, each 0 or 1
//! ```
//!
//! An empty batch is written with all dimensions zero.

use std::path::Path;

use crate::error::{Error, Result};
use crate::image::{Image, Shape};
use crate::pipeline::{Batch, LabelVector, Sample};

pub const CONTAINER_MAGIC: &[u8; 5] = b"SAUG1";
pub const CONTAINER_HEADER_LEN: usize = 5 + 5 * 4;

pub fn encode_container(samples: &[Sample]) -> Result<Vec<u8>> {
    let batch = Batch::new(samples.to_vec())?;
    let shape = batch.shape().unwrap_or(Shape::new(0, 0, 0));
    let fields = [samples.len(), shape.height, shape.width, shape.channels, batch.label_dim()];
    let (images, labels) = batch.to_raw();
    let mut out = Vec::with_capacity(CONTAINER_HEADER_LEN + images.len() + labels.len());
    out.extend_from_slice(CONTAINER_MAGIC);
    for f in fields {
        let v = u32::try_from(f)
            .map_err(|_| Error::InvalidParameter(format!("dimension {f} does not fit in u32")))?;
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&images);
    out.extend_from_slice(&labels);
    Ok(out)
}

pub fn decode_container(bytes: &[u8]) -> Result<Vec<Sample>> {
    if bytes.len() < CONTAINER_MAGIC.len() || &bytes[..5] != CONTAINER_MAGIC {
        return Err(Error::BadMagic { found: bytes[..bytes.len().min(5)].to_vec() });
    }
    if bytes.len() < CONTAINER_HEADER_LEN {
        return Err(Error::MalformedHeader {
            offset: bytes.len() as u64,
            reason: format!("header needs {CONTAINER_HEADER_LEN} bytes"),
        });
    }
    let field = |i: usize| {
        let at = 5 + 4 * i;
        u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap()) as u64
    };
    let [n, h, w, c, label_dim] = [0, 1, 2, 3, 4].map(field);
    let expected = [h, w, c]
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(d))
        .and_then(|img| img.checked_add(label_dim))
        .and_then(|per| per.checked_mul(n))
        .and_then(|body| body.checked_add(CONTAINER_HEADER_LEN as u64));
    let actual = bytes.len() as u64;
    match expected {
        Some(e) if e == actual => {}
        Some(e) => return Err(Error::SizeMismatch { expected: e, actual }),
        None => return Err(Error::SizeMismatch { expected: u64::MAX, actual }),
    }
    // The size check above bounds every product by the input length.
    let (n, image_len, label_dim) = (n as usize, (h * w * c) as usize, label_dim as usize);
    let shape = Shape::new(h as usize, w as usize, c as usize);
    let label_start = CONTAINER_HEADER_LEN + n * image_len;
    if let Some(pos) = bytes[label_start..].iter().position(|&b| b > 1) {
        return Err(Error::LabelByte { offset: (label_start + pos) as u64, value: bytes[label_start + pos] });
    }
    (0..n)
        .map(|i| {
            let px = &bytes[CONTAINER_HEADER_LEN + i * image_len..][..image_len];
            let lb = &bytes[label_start + i * label_dim..][..label_dim];
            Ok(Sample::new(Image::new(shape, px.to_vec())?, LabelVector::new(lb.to_vec())?))
        })
        .collect()
}

pub fn write_container(samples: &[Sample], path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, encode_container(samples)?)?;
    Ok(())
}

pub fn read_container(path: impl AsRef<Path>) -> Result<Vec<Sample>> {
    decode_container(&std::fs::read(path)?)
}
