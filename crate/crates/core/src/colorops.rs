//! Continuous color augmentations in RGB: brightness, contrast, saturation
//! and the general linear form `alpha * i + beta`.
//!
//! Real-valued results are rounded half away from zero and then clamped to
//! `[0, 255]`. Clamping happens only at that final conversion.

use crate::error::{Error, Result};
use crate::image::Image;

// Luma weights in thousandths: 0.299, 0.587, 0.114.
const LUMA_R: u32 = 299;
const LUMA_G: u32 = 587;
const LUMA_B: u32 = 114;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RgbPixel {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl RgbPixel {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        RgbPixel { r, g, b }
    }

    pub fn channels(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }
}

/// Rounds half away from zero, then clamps into the 8-bit range.
#[inline]
pub fn to_intensity(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

pub fn brightness(i: u8, b: f64) -> u8 {
    to_intensity(i as f64 + b)
}

/// Scales around the midpoint 128. Requires `s > 0`.
pub fn contrast(i: u8, s: f64) -> Result<u8> {
    check_contrast(s)?;
    Ok(to_intensity(contrast_real(i, s)))
}

pub fn grayscale(p: RgbPixel) -> f64 {
    luma_millis(p) as f64 / 1000.0
}

fn luma_millis(p: RgbPixel) -> u32 {
    LUMA_R * p.r as u32 + LUMA_G * p.g as u32 + LUMA_B * p.b as u32
}

/// Pulls each channel toward (`c < 1`) or away from (`c > 1`) the pixel's
/// grayscale value. Requires `c >= 0`.
pub fn saturation(p: RgbPixel, c: f64) -> Result<RgbPixel> {
    check_saturation(c)?;
    let [r, g, b] = saturation_real(p, c).map(to_intensity);
    Ok(RgbPixel { r, g, b })
}

pub fn linear_color(i: u8, alpha: f64, beta: f64) -> u8 {
    to_intensity(alpha * i as f64 + beta)
}

pub(crate) fn contrast_real(i: u8, s: f64) -> f64 {
    128.0 + s * (i as f64 - 128.0)
}

// Evaluated in thousandths so the only inexact step is the final division.
pub(crate) fn saturation_real(p: RgbPixel, c: f64) -> [f64; 3] {
    let g = luma_millis(p) as f64;
    p.channels().map(|ch| (g + c * (1000.0 * ch as f64 - g)) / 1000.0)
}

pub(crate) fn check_contrast(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("contrast factor must be > 0, got {s}")))
    }
}

pub(crate) fn check_saturation(c: f64) -> Result<()> {
    if c.is_finite() && c >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("saturation factor must be >= 0, got {c}")))
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

/// One configured color transform, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ColorTransform {
    Brightness(f64),
    Contrast(f64),
    Saturation(f64),
    Linear { alpha: f64, beta: f64 },
}

impl ColorTransform {
    pub fn validate(self) -> Result<Self> {
        match self {
            ColorTransform::Brightness(b) => check_finite("brightness bias", b)?,
            ColorTransform::Contrast(s) => check_contrast(s)?,
            ColorTransform::Saturation(c) => check_saturation(c)?,
            ColorTransform::Linear { alpha, beta } => {
                check_finite("alpha", alpha)?;
                check_finite("beta", beta)?;
            }
        }
        Ok(self)
    }

    /// Applies the transform to a whole image. Saturation needs three
    /// channels; the others act per intensity.
    pub fn apply(self, image: &Image) -> Result<Image> {
        self.validate()?;
        let shape = image.shape();
        let mut out = image.clone();
        match self {
            ColorTransform::Saturation(c) => {
                if shape.channels != 3 {
                    return Err(Error::InvalidParameter(format!(
                        "saturation needs 3 channels, image is {shape}"
                    )));
                }
                let n = shape.plane_len();
                let src = image.as_bytes();
                let dst = out.as_bytes_mut();
                for px in 0..n {
                    let p = RgbPixel::new(src[px], src[n + px], src[2 * n + px]);
                    let q = saturation(p, c)?;
                    dst[px] = q.r;
                    dst[n + px] = q.g;
                    dst[2 * n + px] = q.b;
                }
            }
            _ => {
                let lut: Vec<u8> = (0..=255u8).map(|i| self.apply_scalar(i)).collect();
                for v in out.as_bytes_mut() {
                    *v = lut[*v as usize];
                }
            }
        }
        Ok(out)
    }

    fn apply_scalar(self, i: u8) -> u8 {
        match self {
            ColorTransform::Brightness(b) => brightness(i, b),
            ColorTransform::Contrast(s) => to_intensity(contrast_real(i, s)),
            ColorTransform::Linear { alpha, beta } => linear_color(i, alpha, beta),
            ColorTransform::Saturation(_) => unreachable!("saturation is per pixel"),
        }
    }
}
