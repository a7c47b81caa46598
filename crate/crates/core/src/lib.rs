//! Grayscale histogram toolkit.
//!
//! Everything here operates on [`GrayImage`], an immutable row-major buffer
//! of integer intensities in `[0, levels - 1]`:
//!
//! * [`histogram`] — raw counts, the normalized probability mass function,
//!   and its cumulative distribution, with CSV export.
//! * [`stats`] — per-region mean, unbiased standard deviation, coefficient
//!   of variation, mode, median, extrema, and SNR reports.
//! * [`equalize`] — classic histogram equalization and brightness-preserving
//!   bi-histogram equalization, both as explicit lookup tables.
//! * [`segment`] — valley thresholding of bimodal histograms and binary
//!   mask construction.
//! * [`synth`] — deterministic test patterns (rectangle, pyramid, pillbox,
//!   cone, gaussian, peak, exponential decay).
//! * [`pgm`] — a bit-exact PGM (P2/P5) codec.
//!
//! All operations are pure functions over immutable values; everything can
//! be shared and called concurrently without coordination.

pub mod equalize;
pub mod error;
pub mod histogram;
pub mod image;
pub mod pgm;
pub mod segment;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
pub use image::{GrayImage, RegionOfInterest};
pub use pgm::{load_pgm, save_pgm, PgmVariant};

pub use histogram::{
    compute_histogram, cumulative, normalize, CumulativeDistribution, Histogram,
    NormalizedHistogram,
};

pub use equalize::{
    apply_map, bbhe_decompose, bbhe_mean_level, equalize_bbhe, equalize_he, he_map,
    BbheDecomposition, IntensityMap,
};

pub use segment::{
    apply_threshold, mask_to_image, threshold_valley, BinaryMask, ThresholdMethod,
    ThresholdResult, DEFAULT_SMOOTH_WINDOW,
};

pub use stats::{
    coefficient_of_variation, format_report, mean_from_histogram, median_level, mode_level,
    region_statistics, report_rows, sample_mean, sample_std, snr_db, std_from_histogram,
    NoiseModel, RegionStatistics, SnrKind,
};

pub use synth::{quantize_field, sample_shape, ScalarField, ShapeSpec};
