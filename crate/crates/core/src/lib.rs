//! LSB steganography as a batch data augmentation.
//!
//! With probability `p` a training sample is replaced by a composite that
//! keeps its own high bits and carries the high bits of a random batch
//! partner in its low `k` bits; the labels of both images are merged into a
//! multi-hot vector. The [`analysis`] module measures how the cover-side
//! effect, uniform quantization, compares with continuous color jitter.

pub mod analysis;
pub mod bitops;
pub mod colorops;
pub mod dataio;
mod error;
pub mod image;
pub mod pipeline;
pub mod rng;

pub use bitops::{delta_i, embed_image, embed_lsb, extract_image, extract_secret, quantize, BitDepth, QuantSpec};
pub use error::{Error, Result};
pub use image::{Image, Shape};
pub use pipeline::{augment_batch, fuse_labels, AugmentationRecord, Batch, LabelVector, RecordKind, Sample, StegParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
