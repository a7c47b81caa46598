//! Region statistics: mean, unbiased standard deviation, coefficient of
//! variation, mode, median, extrema, and signal-to-noise ratios.
//!
//! The mean and standard deviation each have two algebraic routes — a direct
//! pass over the pixels and a histogram-weighted form — and both are exposed
//! so they can cross-check each other.

use crate::error::{Error, Result};
use crate::histogram::{compute_histogram, Histogram};
use crate::image::{GrayImage, RegionOfInterest};

/// Known noise standard deviation, supplied externally. The crate never
/// estimates it from image content.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    s_n: f64,
}

impl NoiseModel {
    pub fn new(s_n: f64) -> Result<Self> {
        if s_n > 0.0 {
            Ok(Self { s_n })
        } else {
            Err(Error::InvalidNoise(s_n))
        }
    }

    pub fn std_dev(&self) -> f64 {
        self.s_n
    }
}

/// Which numerator the SNR ratio uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SnrKind {
    /// `20 log10((max - min) / s_n)` — the report default.
    #[default]
    Range,
    /// `20 log10(mean / s_n)`.
    Mean,
    /// `20 log10(std / s_n)`.
    Signal,
}

/// The full per-region report.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionStatistics {
    pub mean: f64,
    pub std: f64,
    pub min: u8,
    pub max: u8,
    pub median: u8,
    pub mode: u8,
    /// Coefficient of variation, in percent.
    pub cv: f64,
    /// Absent when no noise model was supplied; rendered as `NA`.
    pub snr_db: Option<f64>,
    pub count: u64,
}

/// Arithmetic mean of the region's samples (direct pixel-sum route).
pub fn sample_mean(image: &GrayImage, roi: Option<RegionOfInterest>) -> Result<f64> {
    let (x0, y0, w, h) = image.region_bounds(roi)?;
    let count = (w * h) as u64;
    if count == 0 {
        return Err(Error::EmptyRegion);
    }
    let mut sum = 0u64;
    for y in y0..y0 + h {
        let row = &image.pixels()[y * image.width() + x0..y * image.width() + x0 + w];
        for &v in row {
            sum += v as u64;
        }
    }
    Ok(sum as f64 / count as f64)
}

/// Arithmetic mean from a histogram (level-weighted route); must agree with
/// [`sample_mean`] on the same region.
pub fn mean_from_histogram(hist: &Histogram) -> Result<f64> {
    if hist.total() == 0 {
        return Err(Error::EmptyRegion);
    }
    let weighted: u64 = hist
        .bins()
        .iter()
        .enumerate()
        .map(|(level, &count)| level as u64 * count)
        .sum();
    Ok(weighted as f64 / hist.total() as f64)
}

/// Unbiased standard deviation, definitional form: squared deviations from
/// the mean divided by `count - 1`.
pub fn sample_std(image: &GrayImage, roi: Option<RegionOfInterest>) -> Result<f64> {
    let (x0, y0, w, h) = image.region_bounds(roi)?;
    let count = (w * h) as u64;
    if count == 0 {
        return Err(Error::EmptyRegion);
    }
    if count == 1 {
        return Err(Error::DegenerateRegion);
    }
    let mean = sample_mean(image, roi)?;
    let mut acc = 0.0f64;
    for y in y0..y0 + h {
        let row = &image.pixels()[y * image.width() + x0..y * image.width() + x0 + w];
        for &v in row {
            let d = v as f64 - mean;
            acc += d * d;
        }
    }
    Ok((acc / (count - 1) as f64).sqrt())
}

/// Unbiased standard deviation, computational form over a histogram:
/// `sqrt((sum x^2 h[x] - count * mean^2) / (count - 1))`.
pub fn std_from_histogram(hist: &Histogram) -> Result<f64> {
    let count = hist.total();
    if count == 0 {
        return Err(Error::EmptyRegion);
    }
    if count == 1 {
        return Err(Error::DegenerateRegion);
    }
    let mean = mean_from_histogram(hist)?;
    let sum_sq: u64 = hist
        .bins()
        .iter()
        .enumerate()
        .map(|(level, &c)| (level * level) as u64 * c)
        .sum();
    let variance = (sum_sq as f64 - count as f64 * mean * mean) / (count - 1) as f64;
    // Rounding in `mean` can push a zero variance a hair negative.
    Ok(variance.max(0.0).sqrt())
}

/// Coefficient of variation in percent: `(std / mean) * 100`.
pub fn coefficient_of_variation(mean: f64, std: f64) -> Result<f64> {
    if mean > 0.0 {
        Ok(std / mean * 100.0)
    } else {
        Err(Error::ZeroMean)
    }
}

/// The most frequent level. Ties break toward the smallest level so the
/// result is deterministic.
pub fn mode_level(hist: &Histogram) -> Result<u8> {
    if hist.total() == 0 {
        return Err(Error::EmptyRegion);
    }
    let mut best = 0usize;
    for (level, &count) in hist.bins().iter().enumerate() {
        if count > hist.bin(best) {
            best = level;
        }
    }
    Ok(best as u8)
}

/// Lower median: the smallest level whose cumulative count reaches half the
/// total.
pub fn median_level(hist: &Histogram) -> Result<u8> {
    if hist.total() == 0 {
        return Err(Error::EmptyRegion);
    }
    let mut cum = 0u64;
    for (level, &count) in hist.bins().iter().enumerate() {
        cum += count;
        if 2 * cum >= hist.total() {
            return Ok(level as u8);
        }
    }
    unreachable!("cumulative count reaches the total");
}

/// Signal-to-noise ratio in decibels for the chosen numerator.
pub fn snr_db(
    kind: SnrKind,
    image: &GrayImage,
    roi: Option<RegionOfInterest>,
    noise: NoiseModel,
) -> Result<f64> {
    let numerator = match kind {
        SnrKind::Range => {
            let (min, max) = region_min_max(image, roi)?;
            (max - min) as f64
        }
        SnrKind::Mean => sample_mean(image, roi)?,
        SnrKind::Signal => sample_std(image, roi)?,
    };
    if numerator <= 0.0 {
        return Err(Error::InvalidNumerator(numerator));
    }
    Ok(20.0 * (numerator / noise.std_dev()).log10())
}

fn region_min_max(image: &GrayImage, roi: Option<RegionOfInterest>) -> Result<(u8, u8)> {
    let (x0, y0, w, h) = image.region_bounds(roi)?;
    let mut min = u8::MAX;
    let mut max = u8::MIN;
    for y in y0..y0 + h {
        let row = &image.pixels()[y * image.width() + x0..y * image.width() + x0 + w];
        for &v in row {
            min = min.min(v);
            max = max.max(v);
        }
    }
    Ok((min, max))
}

/// Computes the whole report for a region. SNR is present only when a noise
/// model is supplied; the region must hold at least two pixels.
pub fn region_statistics(
    image: &GrayImage,
    roi: Option<RegionOfInterest>,
    noise: Option<NoiseModel>,
    snr_kind: SnrKind,
) -> Result<RegionStatistics> {
    let hist = compute_histogram(image, roi)?;
    if hist.total() == 0 {
        return Err(Error::EmptyRegion);
    }
    if hist.total() == 1 {
        return Err(Error::DegenerateRegion);
    }
    let mean = sample_mean(image, roi)?;
    let std = sample_std(image, roi)?;
    let (min, max) = region_min_max(image, roi)?;
    let median = median_level(&hist)?;
    let mode = mode_level(&hist)?;
    let cv = coefficient_of_variation(mean, std)?;
    let snr_db = match noise {
        Some(n) => Some(snr_db(snr_kind, image, roi, n)?),
        None => None,
    };
    Ok(RegionStatistics {
        mean,
        std,
        min,
        max,
        median,
        mode,
        cv,
        snr_db,
        count: hist.total(),
    })
}

/// Report rows in presentation order, as `(label, value)` pairs.
/// Reals render to one decimal place; a missing SNR renders as `NA`.
pub fn report_rows(stats: &RegionStatistics) -> Vec<(&'static str, String)> {
    vec![
        ("Average", format!("{:.1}", stats.mean)),
        ("Standard deviation", format!("{:.1}", stats.std)),
        ("Minimum", stats.min.to_string()),
        ("Median", stats.median.to_string()),
        ("Maximum", stats.max.to_string()),
        ("Mode", stats.mode.to_string()),
        (
            "SNR(db)",
            match stats.snr_db {
                Some(v) => format!("{v:.1}"),
                None => "NA".into(),
            },
        ),
    ]
}

/// Renders the report as one `label<TAB>value` line per row.
pub fn format_report(stats: &RegionStatistics) -> String {
    let mut out = String::new();
    for (label, value) in report_rows(stats) {
        out.push_str(label);
        out.push('\t');
        out.push_str(&value);
        out.push('\n');
    }
    out
}
