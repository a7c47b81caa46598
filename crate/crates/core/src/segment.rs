//! Histogram-threshold segmentation of bimodal images.
//!
//! The threshold is either supplied manually or found automatically as the
//! valley of a smoothed histogram: smooth the bins with a centered moving
//! average, locate the two tallest local maxima, and take the level with the
//! smallest smoothed count strictly between them. Pixels strictly above the
//! threshold become foreground.

use crate::error::{Error, Result};
use crate::histogram::Histogram;
use crate::image::GrayImage;

/// Default moving-average window for valley detection: small enough to keep
/// bimodality at 256 levels, large enough to suppress single-bin noise.
pub const DEFAULT_SMOOTH_WINDOW: usize = 5;

/// How a threshold was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMethod {
    Manual,
    Valley,
}

/// A segmentation threshold together with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdResult {
    pub threshold: u8,
    pub method: ThresholdMethod,
}

impl ThresholdResult {
    pub fn manual(threshold: u8) -> Self {
        Self {
            threshold,
            method: ThresholdMethod::Manual,
        }
    }
}

/// Per-pixel boolean segmentation result, row-major like the source image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        assert!(x < self.width && y < self.height, "mask index out of bounds");
        self.bits[y * self.width + x]
    }

    /// Number of foreground pixels.
    pub fn count_true(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Finds the valley between the two dominant modes of a histogram.
///
/// Bins are smoothed with a centered moving average of `smooth_window`
/// (odd, >= 1); edge bins average over the neighbors that exist. A plateau
/// counts as a single local maximum, represented by its lowest level. The
/// returned level is the smoothed minimum strictly between the two tallest
/// maxima, ties broken toward the lowest level.
pub fn threshold_valley(hist: &Histogram, smooth_window: usize) -> Result<ThresholdResult> {
    if smooth_window == 0 || smooth_window.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "smoothing window {smooth_window} must be odd and positive"
        )));
    }
    let occupied = hist.bins().iter().filter(|&&c| c > 0).count();
    if occupied < 2 {
        return Err(Error::NotBimodal);
    }

    let smoothed = smooth(hist.bins(), smooth_window);
    let maxima = local_maxima(&smoothed);
    if maxima.len() < 2 {
        return Err(Error::NotBimodal);
    }

    // The two tallest maxima; equal heights prefer lower levels.
    let mut by_height = maxima.clone();
    by_height.sort_by(|a, b| {
        smoothed[*b]
            .partial_cmp(&smoothed[*a])
            .unwrap()
            .then(a.cmp(b))
    });
    let p1 = by_height[0].min(by_height[1]);
    let p2 = by_height[0].max(by_height[1]);

    let mut valley = p1 + 1;
    for x in p1 + 1..p2 {
        if smoothed[x] < smoothed[valley] {
            valley = x;
        }
    }
    Ok(ThresholdResult {
        threshold: valley as u8,
        method: ThresholdMethod::Valley,
    })
}

/// Centered moving average; bins near the edges use whatever neighborhood
/// exists.
fn smooth(bins: &[u64], window: usize) -> Vec<f64> {
    let half = window / 2;
    let n = bins.len();
    (0..n)
        .map(|x| {
            let lo = x.saturating_sub(half);
            let hi = (x + half).min(n - 1);
            let sum: u64 = bins[lo..=hi].iter().sum();
            sum as f64 / (hi - lo + 1) as f64
        })
        .collect()
}

/// Levels of local maxima, collapsing plateaus to their lowest level.
/// A run of equal values is a maximum when it strictly rises on entry (or
/// starts the sequence) and strictly falls on exit (or ends it) — so a
/// plateau in the middle of a monotone flank is not a maximum.
fn local_maxima(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    let mut maxima = Vec::new();
    let mut start = 0usize;
    while start < n {
        let mut end = start;
        while end + 1 < n && values[end + 1] == values[start] {
            end += 1;
        }
        let rises = start == 0 || values[start - 1] < values[start];
        let falls = end == n - 1 || values[end + 1] < values[end];
        // A flat sequence spanning everything is a plateau, not a peak.
        if rises && falls && !(start == 0 && end == n - 1) {
            maxima.push(start);
        }
        start = end + 1;
    }
    maxima
}

/// Marks every pixel strictly above `threshold` as foreground.
pub fn apply_threshold(image: &GrayImage, threshold: u8) -> Result<BinaryMask> {
    if threshold as usize >= image.levels() {
        return Err(Error::ThresholdOutOfRange {
            threshold: threshold as u32,
            levels: image.levels(),
        });
    }
    Ok(BinaryMask {
        width: image.width(),
        height: image.height(),
        bits: image.pixels().iter().map(|&v| v > threshold).collect(),
    })
}

/// Renders a mask as a viewable image: background 0, foreground 255.
pub fn mask_to_image(mask: &BinaryMask) -> GrayImage {
    let pixels = mask.bits().iter().map(|&b| if b { 255 } else { 0 }).collect();
    GrayImage::new(mask.width(), mask.height(), 256, pixels)
        .expect("mask dimensions are valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_valley_with_tie() {
        let hist = Histogram::from_bins(vec![0, 5, 0, 0, 0, 7, 0, 0]).unwrap();
        let result = threshold_valley(&hist, 1).unwrap();
        // Peaks at 1 and 5; levels 2..4 tie at zero, lowest wins.
        assert_eq!(result.threshold, 2);
        assert_eq!(result.method, ThresholdMethod::Valley);
    }

    #[test]
    fn single_peak_is_not_bimodal() {
        let hist = Histogram::from_bins(vec![0, 1, 5, 9, 5, 1, 0, 0]).unwrap();
        assert_eq!(threshold_valley(&hist, 1).unwrap_err(), Error::NotBimodal);
    }

    #[test]
    fn constant_histogram_is_not_bimodal() {
        let hist = Histogram::from_bins(vec![3; 8]).unwrap();
        assert_eq!(threshold_valley(&hist, 1).unwrap_err(), Error::NotBimodal);
    }

    #[test]
    fn even_window_is_rejected() {
        let hist = Histogram::from_bins(vec![0, 5, 0, 0, 0, 7, 0, 0]).unwrap();
        assert!(matches!(
            threshold_valley(&hist, 4).unwrap_err(),
            Error::InvalidParams(_)
        ));
    }

    #[test]
    fn smoothing_bridges_single_bin_noise() {
        // An isolated spike between the modes should not survive a width-5
        // average as a third competitive peak.
        let mut bins = vec![0u64; 16];
        bins[2] = 40;
        bins[3] = 50;
        bins[4] = 40;
        bins[8] = 6; // noise spike
        bins[12] = 40;
        bins[13] = 50;
        bins[14] = 40;
        let hist = Histogram::from_bins(bins).unwrap();
        let result = threshold_valley(&hist, 5).unwrap();
        assert!(result.threshold > 4 && result.threshold < 12);
    }

    #[test]
    fn threshold_compares_strictly() {
        let img = GrayImage::new(4, 1, 8, vec![1, 3, 5, 7]).unwrap();
        let mask = apply_threshold(&img, 4).unwrap();
        assert_eq!(mask.bits(), &[false, false, true, true]);
    }

    #[test]
    fn top_level_threshold_is_all_background() {
        let img = GrayImage::new(4, 1, 8, vec![1, 3, 5, 7]).unwrap();
        let mask = apply_threshold(&img, 7).unwrap();
        assert!(mask.bits().iter().all(|&b| !b));
    }

    #[test]
    fn zero_threshold_without_zero_pixels_is_all_foreground() {
        let img = GrayImage::new(4, 1, 8, vec![1, 3, 5, 7]).unwrap();
        let mask = apply_threshold(&img, 0).unwrap();
        assert!(mask.bits().iter().all(|&b| b));
    }

    #[test]
    fn threshold_out_of_range() {
        let img = GrayImage::new(2, 1, 4, vec![0, 3]).unwrap();
        assert_eq!(
            apply_threshold(&img, 4).unwrap_err(),
            Error::ThresholdOutOfRange {
                threshold: 4,
                levels: 4
            }
        );
    }

    #[test]
    fn mask_renders_as_black_and_white() {
        let img = GrayImage::new(4, 1, 8, vec![1, 3, 5, 7]).unwrap();
        let mask = apply_threshold(&img, 4).unwrap();
        let rendered = mask_to_image(&mask);
        assert_eq!(rendered.levels(), 256);
        assert_eq!(rendered.pixels(), &[0, 0, 255, 255]);
    }

    #[test]
    fn constant_image_masks_uniformly() {
        let img = GrayImage::constant(3, 3, 256, 90).unwrap();
        for t in [0u8, 89, 90, 255] {
            let mask = apply_threshold(&img, t).unwrap();
            let trues = mask.count_true();
            assert!(trues == 0 || trues == img.len(), "threshold {t}");
        }
    }

    #[test]
    fn valley_lies_strictly_between_peaks() {
        let hist = Histogram::from_bins(vec![9, 3, 1, 2, 4, 8, 1, 0]).unwrap();
        let t = threshold_valley(&hist, 1).unwrap().threshold as usize;
        assert!(t > 0 && t < 5);
    }
}
