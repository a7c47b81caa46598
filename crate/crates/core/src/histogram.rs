//! Raw, normalized, and cumulative histograms.
//!
//! The histogram counts how often each gray level occurs in a region; the
//! normalized variant is the empirical probability mass function of
//! brightness, and its running sum is the cumulative distribution that
//! drives equalization. Probabilities are accumulated in ascending level
//! order so results are reproducible bit-for-bit.

use crate::error::{Error, Result};
use crate::image::{GrayImage, RegionOfInterest};

/// Per-level occurrence counts over a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    bins: Vec<u64>,
    total: u64,
}

impl Histogram {
    /// Builds a histogram directly from bin counts.
    ///
    /// The bin count must look like a level count: a power of two in 2..=256.
    pub fn from_bins(bins: Vec<u64>) -> Result<Self> {
        let n = bins.len();
        if !(2..=256).contains(&n) || !n.is_power_of_two() {
            return Err(Error::InvalidLevels(n));
        }
        let total = bins.iter().sum();
        Ok(Self { bins, total })
    }

    /// Number of gray levels covered (length of `bins`).
    pub fn levels(&self) -> usize {
        self.bins.len()
    }

    /// Count for level `x`.
    pub fn bin(&self, x: usize) -> u64 {
        self.bins[x]
    }

    pub fn bins(&self) -> &[u64] {
        &self.bins
    }

    /// Total pixel count of the region the histogram was built over.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// CSV rendering: `level,count` header plus one row per level.
    pub fn counts_csv(&self) -> String {
        let mut out = String::from("level,count\n");
        for (x, &c) in self.bins.iter().enumerate() {
            out.push_str(&format!("{x},{c}\n"));
        }
        out
    }
}

/// The empirical probability mass function of brightness: `probs[x] >= 0`
/// and the probabilities sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedHistogram {
    probs: Vec<f64>,
}

impl NormalizedHistogram {
    /// Validates and wraps a probability vector (each entry nonnegative,
    /// sum within 1e-9 of one).
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidLevels(probs.len()));
        }
        if probs.iter().any(|&p| p.is_nan() || p < 0.0) {
            return Err(Error::InvalidParams(
                "probabilities must be nonnegative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn levels(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, x: usize) -> f64 {
        self.probs[x]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// CSV rendering: `level,probability`, probabilities to 9 decimal places.
    pub fn probabilities_csv(&self) -> String {
        let mut out = String::from("level,probability\n");
        for (x, &p) in self.probs.iter().enumerate() {
            out.push_str(&format!("{x},{p:.9}\n"));
        }
        out
    }
}

/// Running sum of a normalized histogram: non-decreasing, ends at one.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeDistribution {
    cdf: Vec<f64>,
}

impl CumulativeDistribution {
    pub fn levels(&self) -> usize {
        self.cdf.len()
    }

    pub fn value(&self, x: usize) -> f64 {
        self.cdf[x]
    }

    pub fn values(&self) -> &[f64] {
        &self.cdf
    }

    /// CSV rendering: `level,cdf`, values to 9 decimal places.
    pub fn cdf_csv(&self) -> String {
        let mut out = String::from("level,cdf\n");
        for (x, &c) in self.cdf.iter().enumerate() {
            out.push_str(&format!("{x},{c:.9}\n"));
        }
        out
    }
}

/// Counts gray-level occurrences over the image, or over `roi` if given.
pub fn compute_histogram(image: &GrayImage, roi: Option<RegionOfInterest>) -> Result<Histogram> {
    let (x0, y0, w, h) = image.region_bounds(roi)?;
    let mut bins = vec![0u64; image.levels()];
    for y in y0..y0 + h {
        let row = &image.pixels()[y * image.width() + x0..y * image.width() + x0 + w];
        for &v in row {
            bins[v as usize] += 1;
        }
    }
    Ok(Histogram {
        bins,
        total: (w * h) as u64,
    })
}

/// Divides each bin by the total count, yielding the brightness PMF.
pub fn normalize(hist: &Histogram) -> Result<NormalizedHistogram> {
    if hist.total == 0 {
        return Err(Error::EmptyRegion);
    }
    let total = hist.total as f64;
    let probs = hist.bins.iter().map(|&c| c as f64 / total).collect();
    Ok(NormalizedHistogram { probs })
}

/// Running sum of the probabilities, accumulated in ascending level order.
pub fn cumulative(norm: &NormalizedHistogram) -> CumulativeDistribution {
    let mut cdf = Vec::with_capacity(norm.probs.len());
    let mut acc = 0.0;
    for &p in &norm.probs {
        acc += p;
        cdf.push(acc);
    }
    CumulativeDistribution { cdf }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_counted_bins() {
        let img = GrayImage::new(2, 2, 4, vec![1, 3, 1, 0]).unwrap();
        let hist = compute_histogram(&img, None).unwrap();
        assert_eq!(hist.bins(), &[1, 2, 0, 1]);
        assert_eq!(hist.total(), 4);
    }

    #[test]
    fn constant_image_fills_one_bin() {
        let img = GrayImage::constant(10, 10, 256, 5).unwrap();
        let hist = compute_histogram(&img, None).unwrap();
        assert_eq!(hist.bin(5), 100);
        assert_eq!(hist.bins().iter().sum::<u64>(), 100);
    }

    #[test]
    fn matches_per_level_rescan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let pixels: Vec<u8> = (0..32 * 32).map(|_| rng.gen()).collect();
        let img = GrayImage::new(32, 32, 256, pixels).unwrap();
        let hist = compute_histogram(&img, None).unwrap();
        // Oracle: count each level by a full pass over the buffer.
        for level in 0..256u32 {
            let expect = img.pixels().iter().filter(|&&v| v as u32 == level).count() as u64;
            assert_eq!(hist.bin(level as usize), expect, "level {level}");
        }
    }

    #[test]
    fn roi_histogram_counts_only_region() {
        let img = GrayImage::new(2, 2, 4, vec![1, 3, 1, 0]).unwrap();
        let roi = RegionOfInterest::new(0, 0, 1, 2).unwrap();
        let hist = compute_histogram(&img, Some(roi)).unwrap();
        assert_eq!(hist.bins(), &[0, 2, 0, 0]);
        assert_eq!(hist.total(), 2);
    }

    #[test]
    fn roi_out_of_bounds() {
        let img = GrayImage::new(2, 2, 4, vec![0; 4]).unwrap();
        let roi = RegionOfInterest::new(2, 0, 1, 1).unwrap();
        assert!(compute_histogram(&img, Some(roi)).is_err());
    }

    #[test]
    fn normalizes_by_total() {
        let hist = Histogram::from_bins(vec![1, 2, 0, 1]).unwrap();
        let norm = normalize(&hist).unwrap();
        assert_eq!(norm.probs(), &[0.25, 0.5, 0.0, 0.25]);
        let sum: f64 = norm.probs().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn empty_histogram_does_not_normalize() {
        let hist = Histogram::from_bins(vec![0, 0, 0, 0]).unwrap();
        assert_eq!(normalize(&hist).unwrap_err(), Error::EmptyRegion);
    }

    #[test]
    fn cumulative_is_prefix_sum() {
        let norm = NormalizedHistogram::from_probs(vec![0.25, 0.5, 0.0, 0.25]).unwrap();
        let cdf = cumulative(&norm);
        assert_eq!(cdf.values(), &[0.25, 0.75, 0.75, 1.0]);
    }

    #[test]
    fn uniform_cdf_is_linear() {
        let norm = NormalizedHistogram::from_probs(vec![0.25; 4]).unwrap();
        let cdf = cumulative(&norm);
        assert_eq!(cdf.values(), &[0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn cumulative_matches_second_pass_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let raw: Vec<f64> = (0..64).map(|_| rng.gen::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|v| v / total).collect();
        let norm = NormalizedHistogram::from_probs(probs.clone()).unwrap();
        let cdf = cumulative(&norm);
        // Oracle: independent naive summation per level.
        for x in 0..probs.len() {
            let expect: f64 = probs[..=x].iter().sum();
            assert!((cdf.value(x) - expect).abs() <= 1e-12, "level {x}");
        }
    }

    #[test]
    fn csv_formats() {
        let hist = Histogram::from_bins(vec![1, 2, 0, 1]).unwrap();
        assert_eq!(hist.counts_csv(), "level,count\n0,1\n1,2\n2,0\n3,1\n");
        let norm = normalize(&hist).unwrap();
        assert!(norm
            .probabilities_csv()
            .starts_with("level,probability\n0,0.250000000\n"));
        let cdf = cumulative(&norm);
        assert!(cdf.cdf_csv().ends_with("3,1.000000000\n"));
    }
}
