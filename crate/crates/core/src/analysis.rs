//! Measurements of how LSB quantization relates to continuous color
//! transforms: level histograms and their uniformity, least-squares linear
//! fits of the quantization map, distance to brightness/contrast/saturation
//! over parameter grids, and per-bit-plane statistics.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::bitops::{delta_i, quantize, BitDepth, QuantSpec};
use crate::colorops::{check_contrast, check_saturation, contrast_real, saturation_real, RgbPixel};
use crate::dataio::Table;
use crate::error::{Error, Result};
use crate::image::Image;

/// Counts of quantized values, one slot per level of `QuantSpec(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelHistogram {
    k: BitDepth,
    counts: Vec<u64>,
}

impl LevelHistogram {
    fn empty(k: BitDepth) -> Self {
        LevelHistogram { k, counts: vec![0; QuantSpec::new(k).level_count()] }
    }

    /// Adds `quantize(v, k)` for every value.
    pub fn add_values(&mut self, values: &[u8]) {
        let shift = self.k.get();
        for &v in values {
            self.counts[(v >> shift) as usize] += 1;
        }
    }

    pub fn k(&self) -> BitDepth {
        self.k
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, level: u8) -> Option<u64> {
        QuantSpec::new(self.k).level_index(level).map(|i| self.counts[i])
    }

    /// `(level, count)` pairs in ascending level order.
    pub fn iter(&self) -> impl Iterator<Item = (u8, u64)> + '_ {
        QuantSpec::new(self.k).levels().zip(self.counts.iter().copied())
    }
}

/// Each intensity in `[0, 255]` counted exactly once.
pub fn full_domain_histogram(k: BitDepth) -> LevelHistogram {
    let mut h = LevelHistogram::empty(k);
    let all: Vec<u8> = (0..=255).collect();
    h.add_values(&all);
    h
}

pub fn population_histogram<'a>(images: impl IntoIterator<Item = &'a Image>, k: BitDepth) -> LevelHistogram {
    let mut h = LevelHistogram::empty(k);
    for img in images {
        h.add_values(img.as_bytes());
    }
    h
}

/// Distribution of `delta_i(v, k)` over a population, indexed by the
/// perturbation value `0..2^k`.
pub fn delta_histogram<'a>(images: impl IntoIterator<Item = &'a Image>, k: BitDepth) -> Vec<u64> {
    let mut counts = vec![0u64; k.bin_width() as usize];
    for img in images {
        for &v in img.as_bytes() {
            counts[delta_i(v, k) as usize] += 1;
        }
    }
    counts
}

pub fn full_domain_delta_histogram(k: BitDepth) -> Vec<u64> {
    let all = Image::new(crate::image::Shape::new(1, 256, 1), (0..=255).collect()).expect("256 values");
    delta_histogram([&all], k)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformityTest {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
}

/// Pearson chi-square of `counts` against the uniform distribution over
/// its slots.
pub fn chi_square_uniform(counts: &[u64]) -> Result<UniformityTest> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::EmptyPopulation);
    }
    if counts.len() < 2 {
        return Err(Error::InvalidParameter("uniformity test needs at least two categories".into()));
    }
    // sum((o - e)^2 / e) with e = total / N equals (N * sum(o^2) - total^2) / total;
    // the numerator is an exact integer, so equal counts give exactly 0.
    let n = counts.len() as u128;
    let sum_sq: u128 = counts.iter().map(|&c| c as u128 * c as u128).sum();
    let numerator = n * sum_sq - total as u128 * total as u128;
    let statistic = numerator as f64 / total as f64;
    let dof = counts.len() as u64 - 1;
    let p_value = if numerator == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).expect("positive dof").sf(statistic)
    };
    Ok(UniformityTest { statistic, dof, p_value })
}

pub fn uniformity_test(h: &LevelHistogram) -> Result<UniformityTest> {
    chi_square_uniform(&h.counts)
}

/// Least-squares line through `(i, quantize(i, k))` for `i` in `[0, 255]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub k: BitDepth,
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub rmse: f64,
}

pub fn fit_linear_approx(k: BitDepth) -> LinearFit {
    // Integer moments are exact; only the final ratios round.
    let (mut sx, mut sy, mut sxx, mut sxy) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..=255u8 {
        let (x, y) = (i as i64, quantize(i, k) as i64);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let n = 256i64;
    let alpha_hat = (n * sxy - sx * sy) as f64 / (n * sxx - sx * sx) as f64;
    let beta_hat = (sy as f64 - alpha_hat * sx as f64) / n as f64;
    let sse: f64 = (0..=255u8)
        .map(|i| {
            let r = quantize(i, k) as f64 - (alpha_hat * i as f64 + beta_hat);
            r * r
        })
        .sum();
    LinearFit { k, alpha_hat, beta_hat, rmse: (sse / n as f64).sqrt() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColorKind {
    Brightness,
    Contrast,
    Saturation,
}

impl ColorKind {
    pub const ALL: [ColorKind; 3] = [ColorKind::Brightness, ColorKind::Contrast, ColorKind::Saturation];

    pub fn name(self) -> &'static str {
        match self {
            ColorKind::Brightness => "brightness",
            ColorKind::Contrast => "contrast",
            ColorKind::Saturation => "saturation",
        }
    }

    /// Parameter sweep used by the command-line analysis.
    pub fn default_grid(self) -> Vec<f64> {
        match self {
            // half steps, so every -(2^k - 1)/2 is on the grid
            ColorKind::Brightness => (0..=256).map(|i| -(i as f64) / 2.0).rev().collect(),
            ColorKind::Contrast => (50..=150).map(|i| i as f64 / 100.0).collect(),
            ColorKind::Saturation => (0..=40).map(|i| i as f64 / 20.0).collect(),
        }
    }
}

/// Mean absolute error between quantization and one color transform for
/// each parameter of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ColorErrorTable {
    pub kind: ColorKind,
    pub k: BitDepth,
    /// `(parameter, mean absolute error)` in grid order.
    pub rows: Vec<(f64, f64)>,
    /// Grid position of the best match. When consecutive grid points tie
    /// at the minimum, the middle of the first such run.
    pub best_index: usize,
}

impl ColorErrorTable {
    pub fn best(&self) -> (f64, f64) {
        self.rows[self.best_index]
    }
}

/// Compares `quantize(i, k)` with the real-valued (unrounded, unclamped)
/// form of the transform. Brightness and contrast are evaluated over every
/// intensity once; saturation over every channel of `population`.
pub fn color_approx_error(
    k: BitDepth,
    kind: ColorKind,
    grid: &[f64],
    population: &[RgbPixel],
) -> Result<ColorErrorTable> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if kind == ColorKind::Saturation && population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let rows = grid
        .iter()
        .map(|&param| {
            let err = match kind {
                ColorKind::Brightness => {
                    if !param.is_finite() {
                        return Err(Error::InvalidParameter(format!("brightness bias {param}")));
                    }
                    mean_abs((0..=255u8).map(|i| quantize(i, k) as f64 - (i as f64 + param)))
                }
                ColorKind::Contrast => {
                    check_contrast(param)?;
                    mean_abs((0..=255u8).map(|i| quantize(i, k) as f64 - contrast_real(i, param)))
                }
                ColorKind::Saturation => {
                    check_saturation(param)?;
                    mean_abs(population.iter().flat_map(|&p| {
                        let target = saturation_real(p, param);
                        p.channels().into_iter().zip(target).map(|(ch, t)| quantize(ch, k) as f64 - t)
                    }))
                }
            };
            Ok((param, err))
        })
        .collect::<Result<Vec<_>>>()?;
    let min = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let start = rows.iter().position(|r| r.1 == min).unwrap_or(0);
    let run = rows[start..].iter().take_while(|r| r.1 == min).count();
    let best_index = start + run.saturating_sub(1) / 2;
    Ok(ColorErrorTable { kind, k, rows, best_index })
}

/// Mean of absolute values with Neumaier-compensated summation.
fn mean_abs(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp, mut n) = (0.0f64, 0.0f64, 0usize);
    for v in values {
        let a = v.abs();
        let t = sum + a;
        comp += if sum.abs() >= a { (sum - t) + a } else { (a - t) + sum };
        sum = t;
        n += 1;
    }
    (sum + comp) / n as f64
}

/// Every `(r, g, b)` with channels in `{0, 17, 34, ..., 255}`.
pub fn default_rgb_population() -> Vec<RgbPixel> {
    let steps: Vec<u8> = (0..16).map(|i| i * 17).collect();
    let mut out = Vec::with_capacity(16 * 16 * 16);
    for &r in &steps {
        for &g in &steps {
            for &b in &steps {
                out.push(RgbPixel::new(r, g, b));
            }
        }
    }
    out
}

/// The RGB pixels of every three-channel image in `images`.
pub fn rgb_pixels<'a>(images: impl IntoIterator<Item = &'a Image>) -> Vec<RgbPixel> {
    let mut out = Vec::new();
    for img in images {
        if img.shape().channels != 3 {
            continue;
        }
        let (r, g, b) = (img.channel(0), img.channel(1), img.channel(2));
        out.extend((0..r.len()).map(|i| RgbPixel::new(r[i], g[i], b[i])));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BitPlaneStat {
    /// 0 is the least significant bit.
    pub plane: u8,
    pub ones: u64,
    pub total: u64,
    pub ones_fraction: f64,
    /// Binary entropy of the plane in bits.
    pub entropy: f64,
}

pub fn bit_plane_stats<'a>(images: impl IntoIterator<Item = &'a Image>) -> Result<Vec<BitPlaneStat>> {
    let mut ones = [0u64; 8];
    let mut total = 0u64;
    for img in images {
        for &v in img.as_bytes() {
            for (plane, count) in ones.iter_mut().enumerate() {
                *count += ((v >> plane) & 1) as u64;
            }
        }
        total += img.as_bytes().len() as u64;
    }
    if total == 0 {
        return Err(Error::EmptyPopulation);
    }
    Ok((0..8)
        .map(|plane| {
            let f = ones[plane] as f64 / total as f64;
            BitPlaneStat { plane: plane as u8, ones: ones[plane], total, ones_fraction: f, entropy: binary_entropy(f) }
        })
        .collect())
}

fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
    }
}

pub fn levels_table(h: &LevelHistogram) -> Table {
    let total = h.total();
    let mut t = Table::new(["level", "count", "probability"]);
    for (level, count) in h.iter() {
        let prob = if total == 0 { 0.0 } else { count as f64 / total as f64 };
        t.push(vec![level.into(), count.into(), prob.into()]);
    }
    t
}

pub fn delta_table(counts: &[u64]) -> Table {
    let total: u64 = counts.iter().sum();
    let mut t = Table::new(["delta", "count", "probability"]);
    for (d, &c) in counts.iter().enumerate() {
        let prob = if total == 0 { 0.0 } else { c as f64 / total as f64 };
        t.push(vec![d.into(), c.into(), prob.into()]);
    }
    t
}

pub fn linfit_table(fits: &[LinearFit]) -> Table {
    let mut t = Table::new(["k", "alpha_hat", "beta_hat", "rmse"]);
    for f in fits {
        t.push(vec![f.k.get().into(), f.alpha_hat.into(), f.beta_hat.into(), f.rmse.into()]);
    }
    t
}

pub fn color_err_table(tables: &[ColorErrorTable]) -> Table {
    let mut t = Table::new(["k", "param", "mean_abs_error", "is_best"]);
    for tab in tables {
        for (i, &(param, err)) in tab.rows.iter().enumerate() {
            let best = (i == tab.best_index) as u8;
            t.push(vec![tab.k.get().into(), param.into(), err.into(), best.into()]);
        }
    }
    t
}

pub fn bitplanes_table(stats: &[BitPlaneStat]) -> Table {
    let mut t = Table::new(["plane", "ones", "total", "ones_fraction", "entropy"]);
    for s in stats {
        t.push(vec![s.plane.into(), s.ones.into(), s.total.into(), s.ones_fraction.into(), s.entropy.into()]);
    }
    t
}
