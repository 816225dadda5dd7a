use std::path::Path;

use crate::error::{Error, Result};
use crate::image::{Image, Shape};
use crate::pipeline::{LabelVector, Sample};

pub const CIFAR10_CLASSES: usize = 10;
/// One label byte followed by 32x32x3 channel-planar pixels.
pub const CIFAR10_RECORD_LEN: usize = 1 + 3072;

pub fn decode_cifar10(bytes: &[u8]) -> Result<Vec<Sample>> {
    let whole = bytes.len() / CIFAR10_RECORD_LEN * CIFAR10_RECORD_LEN;
    if whole != bytes.len() {
        return Err(Error::TruncatedRecord { offset: whole as u64 });
    }
    bytes
        .chunks_exact(CIFAR10_RECORD_LEN)
        .enumerate()
        .map(|(n, rec)| {
            let label = rec[0];
            if label as usize >= CIFAR10_CLASSES {
                return Err(Error::LabelOutOfRange { offset: (n * CIFAR10_RECORD_LEN) as u64, label });
            }
            Ok(Sample::new(
                Image::new(Shape::CIFAR, rec[1..].to_vec())?,
                LabelVector::one_hot(label as usize, CIFAR10_CLASSES)?,
            ))
        })
        .collect()
}

pub fn read_cifar10(path: impl AsRef<Path>) -> Result<Vec<Sample>> {
    decode_cifar10(&std::fs::read(path)?)
}
