//! Batch augmentation: with probability `p`, each sample is replaced by the
//! LSB composite of itself (cover) and a random partner from the same batch
//! (secret), with a uniformly drawn bit depth and the union of both labels.
//!
//! Every slot owns an independent [`DecisionStream`] keyed by
//! `(seed, index)` and draws, in this order:
//!
//! 1. `u` uniform on `[0, 1)`; the slot is augmented iff `u < p`;
//! 2. a partner index uniform over `[0, D) \ {index}`;
//! 3. a bit depth uniform over `k_choices`.
//!
//! All three draws happen whether or not the slot is augmented, so a slot's
//! partner and depth do not depend on `p`.

use rayon::prelude::*;

use crate::bitops::{embed_image, BitDepth};
use crate::error::{Error, Result};
use crate::image::{Image, Shape};
use crate::rng::DecisionStream;

/// Multi-hot class vector with entries in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelVector(Vec<u8>);

impl LabelVector {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&v| v > 1) {
            return Err(Error::InvalidLabel(format!(
                "entry {pos} is {}, expected 0 or 1",
                entries[pos]
            )));
        }
        Ok(LabelVector(entries))
    }

    pub fn one_hot(class: usize, len: usize) -> Result<Self> {
        if class >= len {
            return Err(Error::InvalidLabel(format!("class {class} out of range for {len} classes")));
        }
        let mut v = vec![0; len];
        v[class] = 1;
        Ok(LabelVector(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&v| v == 1).count()
    }

    /// Indices of the set entries.
    pub fn classes(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i)
    }
}

/// Element-wise OR of two label vectors.
pub fn fuse_labels(a: &LabelVector, b: &LabelVector) -> Result<LabelVector> {
    if a.len() != b.len() {
        return Err(Error::LabelLengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(LabelVector(a.0.iter().zip(&b.0).map(|(x, y)| x | y).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub image: Image,
    pub label: LabelVector,
}

impl Sample {
    pub fn new(image: Image, label: LabelVector) -> Self {
        Sample { image, label }
    }
}

/// An ordered list of samples sharing one image shape and label length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Batch {
    samples: Vec<Sample>,
}

impl Batch {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        if let Some(first) = samples.first() {
            let shape = first.image.shape();
            let dim = first.label.len();
            for s in &samples[1..] {
                if s.image.shape() != shape {
                    return Err(Error::ShapeMismatch { left: shape, right: s.image.shape() });
                }
                if s.label.len() != dim {
                    return Err(Error::LabelLengthMismatch { left: dim, right: s.label.len() });
                }
            }
        }
        Ok(Batch { samples })
    }

    /// Builds a batch from contiguous `(n, c, h, w)` image bytes and
    /// `(n, label_dim)` label bytes.
    pub fn from_raw(shape: Shape, label_dim: usize, images: &[u8], labels: &[u8]) -> Result<Self> {
        if label_dim == 0 {
            return Err(Error::InvalidLabel("label dimension must be at least 1".into()));
        }
        let img_len = shape.len();
        if img_len == 0 || !images.len().is_multiple_of(img_len) {
            return Err(Error::BufferSize { shape, actual: images.len() });
        }
        let n = images.len() / img_len;
        if labels.len() != n * label_dim {
            return Err(Error::InvalidLabel(format!(
                "expected {} label bytes for {n} samples, found {}",
                n * label_dim,
                labels.len()
            )));
        }
        let samples = images
            .chunks_exact(img_len)
            .zip(labels.chunks_exact(label_dim))
            .map(|(px, lb)| Ok(Sample::new(Image::new(shape, px.to_vec())?, LabelVector::new(lb.to_vec())?)))
            .collect::<Result<Vec<_>>>()?;
        Batch::new(samples)
    }

    /// Inverse of [`from_raw`](Self::from_raw): `(images, labels)`.
    pub fn to_raw(&self) -> (Vec<u8>, Vec<u8>) {
        let mut images = Vec::with_capacity(self.len() * self.shape().map_or(0, |s| s.len()));
        let mut labels = Vec::with_capacity(self.len() * self.label_dim());
        for s in &self.samples {
            images.extend_from_slice(s.image.as_bytes());
            labels.extend_from_slice(s.label.as_slice());
        }
        (images, labels)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Sample> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn shape(&self) -> Option<Shape> {
        self.samples.first().map(|s| s.image.shape())
    }

    pub fn label_dim(&self) -> usize {
        self.samples.first().map_or(0, |s| s.label.len())
    }
}

/// Augmentation settings. Defaults: `p = 0.5`, every depth in `1..=7`,
/// seed 0.
#[derive(Clone, Debug, PartialEq)]
pub struct StegParams {
    p: f64,
    k_choices: Vec<BitDepth>,
    seed: u64,
}

impl StegParams {
    /// `k_choices` is treated as a set: duplicates are dropped and the
    /// remaining depths sorted.
    pub fn new(p: f64, k_choices: impl IntoIterator<Item = BitDepth>, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("probability must be in [0, 1], got {p}")));
        }
        let mut k_choices: Vec<BitDepth> = k_choices.into_iter().collect();
        k_choices.sort();
        k_choices.dedup();
        if k_choices.is_empty() {
            return Err(Error::InvalidParameter("k choices must not be empty".into()));
        }
        Ok(StegParams { p, k_choices, seed })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn k_choices(&self) -> &[BitDepth] {
        &self.k_choices
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Default for StegParams {
    fn default() -> Self {
        StegParams { p: 0.5, k_choices: BitDepth::all().collect(), seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    Passthrough,
    Steg { secret_index: usize, k: BitDepth },
}

/// What happened to one output slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugmentationRecord {
    pub output_index: usize,
    pub kind: RecordKind,
}

/// Uniform draw from `k_choices`. Panics if `k_choices` is empty.
pub fn sample_k(stream: &mut DecisionStream, k_choices: &[BitDepth]) -> BitDepth {
    k_choices[stream.below(k_choices.len() as u64) as usize]
}

/// The decision for slot `index` of a batch of `batch_len` samples. Pure in
/// its arguments; [`augment_batch`] applies exactly this.
pub fn decide(params: &StegParams, index: usize, batch_len: usize) -> AugmentationRecord {
    debug_assert!(batch_len >= 2 && index < batch_len);
    let mut stream = DecisionStream::new(params.seed, index as u64);
    let apply = stream.next_f64() < params.p;
    let r = stream.below(batch_len as u64 - 1) as usize;
    let partner = if r < index { r } else { r + 1 };
    let k = sample_k(&mut stream, &params.k_choices);
    let kind = if apply { RecordKind::Steg { secret_index: partner, k } } else { RecordKind::Passthrough };
    AugmentationRecord { output_index: index, kind }
}

/// Produces a new batch of the same size. Runs on the current rayon pool;
/// the result does not depend on the number of workers.
pub fn augment_batch(batch: &Batch, params: &StegParams) -> Result<(Batch, Vec<AugmentationRecord>)> {
    let d = batch.len();
    if d < 2 {
        return Err(Error::BatchTooSmall(d));
    }
    let samples = batch.samples();
    let (out, records): (Vec<Sample>, Vec<AugmentationRecord>) = (0..d)
        .into_par_iter()
        .map(|i| {
            let record = decide(params, i, d);
            let sample = apply_record(samples, &record)?;
            Ok((sample, record))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok((Batch { samples: out }, records))
}

/// Rebuilds the output sample a record describes from the input samples.
pub fn apply_record(samples: &[Sample], record: &AugmentationRecord) -> Result<Sample> {
    let cover = &samples[record.output_index];
    match record.kind {
        RecordKind::Passthrough => Ok(cover.clone()),
        RecordKind::Steg { secret_index, k } => {
            let secret = &samples[secret_index];
            Ok(Sample::new(
                embed_image(&cover.image, &secret.image, k)?,
                fuse_labels(&cover.label, &secret.label)?,
            ))
        }
    }
}
