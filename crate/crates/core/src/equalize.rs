//! Contrast enhancement by histogram equalization.
//!
//! Two flavors, both realized as per-level lookup tables:
//!
//! * **Classic equalization** maps level `x` to `round((L-1) * cdf(x))`,
//!   pushing the output's cumulative distribution toward a straight line.
//! * **Brightness-preserving bi-histogram equalization** splits the image at
//!   its integer mean level `X_m`, then equalizes the lower sub-histogram
//!   over `[0, X_m]` and the upper one over `[X_m+1, L-1]` independently.
//!   Pixels at or below the mean stay at or below it, which is what keeps
//!   the output brightness near the input's.
//!
//! Real-valued map outputs are rounded half-away-from-zero everywhere.

use crate::error::{Error, Result};
use crate::histogram::{compute_histogram, cumulative, normalize, Histogram};
use crate::image::GrayImage;

/// A lookup table with one output level per input level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntensityMap {
    lut: Vec<u8>,
}

impl IntensityMap {
    /// Wraps a table, checking every entry is a valid level for its length.
    pub fn new(lut: Vec<u8>) -> Result<Self> {
        let levels = lut.len();
        if !(2..=256).contains(&levels) || !levels.is_power_of_two() {
            return Err(Error::InvalidLevels(levels));
        }
        let max = (levels - 1) as u8;
        if let Some(&bad) = lut.iter().find(|&&v| v > max) {
            return Err(Error::PixelOutOfRange {
                value: bad as u32,
                max: max as u32,
            });
        }
        Ok(Self { lut })
    }

    /// The identity map on `levels` levels.
    pub fn identity(levels: usize) -> Result<Self> {
        if !(2..=256).contains(&levels) || !levels.is_power_of_two() {
            return Err(Error::InvalidLevels(levels));
        }
        Ok(Self {
            lut: (0..levels).map(|v| v as u8).collect(),
        })
    }

    pub fn levels(&self) -> usize {
        self.lut.len()
    }

    /// Output level for input level `x`.
    pub fn map(&self, x: u8) -> u8 {
        self.lut[x as usize]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.lut
    }

    /// True when no entry decreases as the input level rises.
    pub fn is_non_decreasing(&self) -> bool {
        self.lut.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Classic equalization map: `lut[x] = round((L-1) * cdf(x))`.
///
/// The cdf is non-decreasing, so the map is too.
pub fn he_map(hist: &Histogram) -> Result<IntensityMap> {
    let cdf = cumulative(&normalize(hist)?);
    let top = (hist.levels() - 1) as f64;
    let lut = cdf
        .values()
        .iter()
        .map(|&c| (top * c).round() as u8)
        .collect();
    IntensityMap::new(lut)
}

/// Replaces every pixel with its table entry; dimensions and level count are
/// preserved.
pub fn apply_map(image: &GrayImage, map: &IntensityMap) -> Result<GrayImage> {
    if map.levels() != image.levels() {
        return Err(Error::LevelMismatch {
            map: map.levels(),
            image: image.levels(),
        });
    }
    let pixels = image.pixels().iter().map(|&v| map.map(v)).collect();
    GrayImage::new(image.width(), image.height(), image.levels(), pixels)
}

/// Classic histogram equalization of the whole image.
pub fn equalize_he(image: &GrayImage) -> Result<GrayImage> {
    let hist = compute_histogram(image, None)?;
    apply_map(image, &he_map(&hist)?)
}

/// The split point for bi-histogram equalization: the floor of the sample
/// mean, guaranteed to be a valid gray level.
pub fn bbhe_mean_level(image: &GrayImage) -> Result<u8> {
    let mean = crate::stats::sample_mean(image, None)?;
    Ok(mean.floor() as u8)
}

/// The two sub-maps of bi-histogram equalization.
///
/// `lower` covers levels `0..=mean_level`, `upper` covers
/// `mean_level+1..L`. An empty sub-image leaves its side's map as the
/// identity on its range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbheDecomposition {
    mean_level: u8,
    levels: usize,
    lower: Vec<u8>,
    upper: Vec<u8>,
    lower_count: u64,
    upper_count: u64,
}

impl BbheDecomposition {
    /// The split level `X_m`.
    pub fn mean_level(&self) -> u8 {
        self.mean_level
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Pixels at or below the split level.
    pub fn lower_count(&self) -> u64 {
        self.lower_count
    }

    /// Pixels above the split level.
    pub fn upper_count(&self) -> u64 {
        self.upper_count
    }

    /// Map entries for levels `0..=mean_level`; every value stays in that
    /// same range.
    pub fn lower_map(&self) -> &[u8] {
        &self.lower
    }

    /// Map entries for levels `mean_level+1..L`; index 0 corresponds to
    /// level `mean_level + 1`. Every value stays in that range.
    pub fn upper_map(&self) -> &[u8] {
        &self.upper
    }

    /// Output level for an input level, dispatching on the split.
    pub fn map_level(&self, x: u8) -> u8 {
        if x <= self.mean_level {
            self.lower[x as usize]
        } else {
            self.upper[x as usize - self.mean_level as usize - 1]
        }
    }

    /// The two sub-maps fused into a single full-range table.
    pub fn composite_map(&self) -> IntensityMap {
        let lut = (0..self.levels).map(|x| self.map_level(x as u8)).collect();
        IntensityMap { lut }
    }
}

/// Splits the image at its mean level and equalizes each side's histogram
/// over its own range.
pub fn bbhe_decompose(image: &GrayImage) -> Result<BbheDecomposition> {
    let mean_level = bbhe_mean_level(image)?;
    let levels = image.levels();
    let hist = compute_histogram(image, None)?;

    let m = mean_level as usize;
    let lower_count: u64 = hist.bins()[..=m].iter().sum();
    let upper_count: u64 = hist.bins()[m + 1..].iter().sum();

    // Lower side: cumulative share of the sub-histogram scaled onto [0, X_m].
    let lower = if lower_count == 0 {
        (0..=m).map(|x| x as u8).collect()
    } else {
        let mut acc = 0.0f64;
        let mut map = Vec::with_capacity(m + 1);
        for x in 0..=m {
            acc += hist.bin(x) as f64 / lower_count as f64;
            map.push((m as f64 * acc).round() as u8);
        }
        map
    };

    // Upper side: cumulative share scaled onto [X_m + 1, L - 1].
    let upper = if upper_count == 0 {
        (m + 1..levels).map(|x| x as u8).collect()
    } else {
        let lo = (m + 1) as f64;
        let span = (levels - 1) as f64 - lo;
        let mut acc = 0.0f64;
        let mut map = Vec::with_capacity(levels - m - 1);
        for x in m + 1..levels {
            acc += hist.bin(x) as f64 / upper_count as f64;
            map.push((lo + span * acc).round() as u8);
        }
        map
    };

    Ok(BbheDecomposition {
        mean_level,
        levels,
        lower,
        upper,
        lower_count,
        upper_count,
    })
}

/// Brightness-preserving bi-histogram equalization of the whole image.
pub fn equalize_bbhe(image: &GrayImage) -> Result<GrayImage> {
    let decomposition = bbhe_decompose(image)?;
    apply_map(image, &decomposition.composite_map())
}
