//! Error type shared across the crate.

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All the ways an operation in this crate can fail.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// PGM header is missing tokens, has a bad magic, or declares zero dimensions.
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),

    /// Sample data ended before `width * height` values were read.
    #[error("truncated PGM data: expected {expected} samples, got {actual}")]
    TruncatedData { expected: usize, actual: usize },

    /// PGM maxval above 255 (16-bit samples are not supported).
    #[error("unsupported PGM maxval {0} (must be at most 255)")]
    UnsupportedMaxval(u32),

    /// Pixel buffer length is inconsistent with the declared dimensions.
    #[error("pixel buffer has {pixel_count} samples, expected {width}x{height} = {expected}",
            expected = width * height)]
    InvalidDimensions {
        width: usize,
        height: usize,
        pixel_count: usize,
    },

    /// Gray-level count outside the supported set (powers of two in 2..=256).
    #[error("invalid level count {0}: must be a power of two between 2 and 256")]
    InvalidLevels(usize),

    /// A sample value at or above the number of gray levels.
    #[error("value {value} exceeds maximum level {max}")]
    PixelOutOfRange { value: u32, max: u32 },

    /// Region of interest extends past the image border.
    #[error("region ({x0},{y0}) {w}x{h} does not fit in a {width}x{height} image")]
    RoiOutOfBounds {
        x0: usize,
        y0: usize,
        w: usize,
        h: usize,
        width: usize,
        height: usize,
    },

    /// The region under analysis contains no pixels (zero-total histogram).
    #[error("region contains no pixels")]
    EmptyRegion,

    /// The region has a single pixel; the unbiased deviation divides by zero.
    #[error("region has a single pixel: standard deviation is undefined")]
    DegenerateRegion,

    /// Mean of zero makes the coefficient of variation undefined.
    #[error("region mean is zero: coefficient of variation is undefined")]
    ZeroMean,

    /// Non-positive ratio numerator; the logarithm is undefined.
    #[error("invalid SNR numerator {0}: must be positive")]
    InvalidNumerator(f64),

    /// Non-positive noise standard deviation.
    #[error("invalid noise standard deviation {0}: must be positive")]
    InvalidNoise(f64),

    /// Lookup table length differs from the image's level count.
    #[error("intensity map has {map} entries but image has {image} levels")]
    LevelMismatch { map: usize, image: usize },

    /// Fewer than two local maxima in the smoothed histogram.
    #[error("histogram is not bimodal: fewer than two local maxima after smoothing")]
    NotBimodal,

    /// Threshold level at or above the image's level count.
    #[error("threshold {threshold} out of range for {levels} levels")]
    ThresholdOutOfRange { threshold: u32, levels: usize },

    /// Invalid parameter combination (shape parameters, smoothing window, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Scalar field with no nonzero sample; quantization has no range to map.
    #[error("degenerate field: every sample is zero")]
    DegenerateField,
}
