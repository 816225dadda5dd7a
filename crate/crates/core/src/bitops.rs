//! Bit-level primitives: LSB embedding, secret extraction, uniform
//! quantization and the quantization perturbation.
//!
//! Every function here is total on its argument types. Intensities are plain
//! `u8`, so the `[0, 255]` range holds by construction, and [`BitDepth`]
//! carries the `1..=7` bound.

use std::fmt;

use crate::error::{Error, Result};
use crate::image::Image;

/// Number of low cover bits replaced during embedding, `1..=7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitDepth(u8);

impl BitDepth {
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 7;

    pub fn new(k: u32) -> Result<Self> {
        if (Self::MIN as u32..=Self::MAX as u32).contains(&k) {
            Ok(BitDepth(k as u8))
        } else {
            Err(Error::InvalidBitDepth(k))
        }
    }

    /// All valid depths in ascending order.
    pub fn all() -> impl Iterator<Item = BitDepth> {
        (Self::MIN..=Self::MAX).map(BitDepth)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// `8 - k`, the depth that describes the secret-side quantization.
    pub fn complement(self) -> BitDepth {
        BitDepth(8 - self.0)
    }

    pub fn bin_width(self) -> u16 {
        1 << self.0
    }

    fn low_mask(self) -> u8 {
        (1u8 << self.0) - 1
    }
}

impl fmt::Display for BitDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u32> for BitDepth {
    type Error = Error;

    fn try_from(k: u32) -> Result<Self> {
        BitDepth::new(k)
    }
}

/// The level structure induced by quantizing at depth `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantSpec {
    pub k: BitDepth,
}

impl QuantSpec {
    pub fn new(k: BitDepth) -> Self {
        QuantSpec { k }
    }

    pub fn bin_width(&self) -> u16 {
        self.k.bin_width()
    }

    /// `256 / 2^k`.
    pub fn level_count(&self) -> usize {
        256 >> self.k.get()
    }

    /// `{0, 2^k, 2*2^k, ..., 256 - 2^k}`.
    pub fn levels(&self) -> impl Iterator<Item = u8> {
        let w = self.bin_width() as usize;
        (0..self.level_count()).map(move |n| (n * w) as u8)
    }

    /// Position of `level` within [`levels`](Self::levels), if it is a level.
    pub fn level_index(&self, level: u8) -> Option<usize> {
        (level & self.k.low_mask() == 0).then(|| (level >> self.k.get()) as usize)
    }
}

/// `floor(i / 2^k) * 2^k`: clears the `k` low bits.
#[inline]
pub fn quantize(i: u8, k: BitDepth) -> u8 {
    i & !k.low_mask()
}

/// The perturbation removed by quantization, `i - quantize(i, k) = i mod 2^k`.
#[inline]
pub fn delta_i(i: u8, k: BitDepth) -> u8 {
    i & k.low_mask()
}

/// Replaces the `k` low bits of `cover` with the `k` high bits of `secret`.
#[inline]
pub fn embed_lsb(cover: u8, secret: u8, k: BitDepth) -> u8 {
    quantize(cover, k) | (secret >> (8 - k.get()))
}

/// Moves the `k` low bits of `stego` back to the top of the byte.
#[inline]
pub fn extract_secret(stego: u8, k: BitDepth) -> u8 {
    delta_i(stego, k) << (8 - k.get())
}

/// Element-wise [`embed_lsb`] over two images of identical shape.
pub fn embed_image(cover: &Image, secret: &Image, k: BitDepth) -> Result<Image> {
    cover.ensure_same_shape(secret)?;
    let data = cover
        .as_bytes()
        .iter()
        .zip(secret.as_bytes())
        .map(|(&c, &s)| embed_lsb(c, s, k))
        .collect();
    Image::new(cover.shape(), data)
}

/// Element-wise [`extract_secret`].
pub fn extract_image(stego: &Image, k: BitDepth) -> Image {
    map_image(stego, |v| extract_secret(v, k))
}

/// Element-wise [`quantize`].
pub fn quantize_image(image: &Image, k: BitDepth) -> Image {
    map_image(image, |v| quantize(v, k))
}

fn map_image(image: &Image, f: impl Fn(u8) -> u8) -> Image {
    let data = image.as_bytes().iter().map(|&v| f(v)).collect();
    Image::new(image.shape(), data).expect("shape preserved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::Shape;

    fn k(v: u32) -> BitDepth {
        BitDepth::new(v).unwrap()
    }

    // Bit-by-bit reference: assemble the output one bit position at a time.
    fn embed_reference(cover: u8, secret: u8, k: u8) -> u8 {
        let mut out = 0u8;
        for bit in 0..8 {
            let v = if bit >= k {
                (cover >> bit) & 1
            } else {
                (secret >> (8 - k + bit)) & 1
            };
            out |= v << bit;
        }
        out
    }

    #[test]
    fn bit_depth_bounds() {
        assert!(BitDepth::new(0).is_err());
        assert!(BitDepth::new(8).is_err());
        assert_eq!(BitDepth::all().count(), 7);
        assert_eq!(k(3).complement().get(), 5);
    }

    #[test]
    fn embed_matches_bitwise_reference_exhaustively() {
        for kd in BitDepth::all() {
            for c in 0..=255u8 {
                for s in 0..=255u8 {
                    assert_eq!(embed_lsb(c, s, kd), embed_reference(c, s, kd.get()));
                }
            }
        }
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(embed_lsb(181, 206, k(3)), 182);
        assert_eq!(embed_lsb(0, 0, k(5)), 0);
        assert_eq!(embed_lsb(255, 255, k(4)), 255);
        assert_eq!(extract_secret(182, k(3)), 192);
        assert_eq!(quantize(181, k(3)), 176);
        assert_eq!(quantize(255, k(1)), 254);
        assert_eq!(delta_i(181, k(3)), 5);
        assert_eq!(delta_i(176, k(3)), 0);
        assert_eq!(delta_i(255, k(7)), 127);
        for kd in BitDepth::all() {
            assert_eq!(quantize(0, kd), 0);
            assert_eq!(extract_secret(0, kd), 0);
            for c in 0..=255u8 {
                assert_eq!(embed_lsb(c, 0, kd), quantize(c, kd));
            }
        }
    }

    #[test]
    fn quant_spec_levels() {
        for kd in BitDepth::all() {
            let spec = QuantSpec::new(kd);
            let levels: Vec<u8> = spec.levels().collect();
            assert_eq!(levels.len(), spec.level_count());
            assert_eq!(spec.bin_width() as usize * spec.level_count(), 256);
            assert_eq!(*levels.last().unwrap() as u16, 256 - spec.bin_width());
            assert!(levels.windows(2).all(|w| (w[1] - w[0]) as u16 == spec.bin_width()));
            for (idx, &l) in levels.iter().enumerate() {
                assert_eq!(spec.level_index(l), Some(idx));
            }
        }
        assert_eq!(QuantSpec::new(k(3)).level_index(5), None);
    }

    #[test]
    fn embed_image_rejects_shape_mismatch() {
        let a = Image::filled(Shape::CIFAR, 1);
        let b = Image::filled(Shape::new(16, 16, 3), 1);
        let err = embed_image(&a, &b, k(3)).unwrap_err();
        assert!(err.to_string().contains("32x32x3"));
        assert!(err.to_string().contains("16x16x3"));
    }

    #[test]
    fn embed_image_with_zero_secret_quantizes() {
        let data: Vec<u8> = (0..Shape::CIFAR.len()).map(|i| (i * 7 % 256) as u8).collect();
        let x = Image::new(Shape::CIFAR, data).unwrap();
        let zeros = Image::filled(Shape::CIFAR, 0);
        for kd in BitDepth::all() {
            assert_eq!(embed_image(&x, &zeros, kd).unwrap(), quantize_image(&x, kd));
        }
    }
}
