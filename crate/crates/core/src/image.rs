//! Grayscale image buffer and rectangular regions of interest.
//!
//! `GrayImage` is the universal currency of this crate: a row-major buffer of
//! integer intensities in `[0, levels - 1]`. Images are immutable after
//! construction, so they can be shared freely across threads.

use crate::error::{Error, Result};

/// A rectangular grayscale image with `levels` shades of gray.
///
/// Level counts are restricted to powers of two in `2..=256` so that every
/// image survives a PGM round trip unchanged (the decoder restores
/// `maxval + 1` levels only when that count is a power of two).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    levels: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Builds an image, validating dimensions, level count, and every sample.
    pub fn new(width: usize, height: usize, levels: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::InvalidDimensions {
                width,
                height,
                pixel_count: pixels.len(),
            });
        }
        if !(2..=256).contains(&levels) || !levels.is_power_of_two() {
            return Err(Error::InvalidLevels(levels));
        }
        let max = (levels - 1) as u8;
        if let Some(&bad) = pixels.iter().find(|&&v| v > max) {
            return Err(Error::PixelOutOfRange {
                value: bad as u32,
                max: max as u32,
            });
        }
        Ok(Self {
            width,
            height,
            levels,
            pixels,
        })
    }

    /// Image filled with a single value.
    pub fn constant(width: usize, height: usize, levels: usize, value: u8) -> Result<Self> {
        Self::new(width, height, levels, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of gray levels `L`; valid samples are `0..=L-1`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Total pixel count.
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    /// Row-major sample buffer, top row first.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Sample at column `x`, row `y`.
    ///
    /// # Panics
    /// Panics if the coordinates are outside the image.
    pub fn get(&self, x: usize, y: usize) -> u8 {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        self.pixels[y * self.width + x]
    }

    /// Checks that `roi` lies entirely inside this image.
    pub fn check_roi(&self, roi: RegionOfInterest) -> Result<()> {
        if roi.x0 + roi.w > self.width || roi.y0 + roi.h > self.height {
            Err(Error::RoiOutOfBounds {
                x0: roi.x0,
                y0: roi.y0,
                w: roi.w,
                h: roi.h,
                width: self.width,
                height: self.height,
            })
        } else {
            Ok(())
        }
    }

    /// Copies the rectangle covered by `roi` into a standalone image.
    pub fn extract_region(&self, roi: RegionOfInterest) -> Result<GrayImage> {
        self.check_roi(roi)?;
        let mut pixels = Vec::with_capacity(roi.w * roi.h);
        for y in roi.y0..roi.y0 + roi.h {
            let row = &self.pixels[y * self.width + roi.x0..y * self.width + roi.x0 + roi.w];
            pixels.extend_from_slice(row);
        }
        GrayImage::new(roi.w, roi.h, self.levels, pixels)
    }

    /// Resolves an optional ROI to concrete bounds `(x0, y0, w, h)`,
    /// defaulting to the full image.
    pub(crate) fn region_bounds(
        &self,
        roi: Option<RegionOfInterest>,
    ) -> Result<(usize, usize, usize, usize)> {
        match roi {
            None => Ok((0, 0, self.width, self.height)),
            Some(r) => {
                self.check_roi(r)?;
                Ok((r.x0, r.y0, r.w, r.h))
            }
        }
    }
}

/// A rectangle selecting part of an image: top-left corner plus extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionOfInterest {
    pub x0: usize,
    pub y0: usize,
    pub w: usize,
    pub h: usize,
}

impl RegionOfInterest {
    /// Builds a region; the extent must be at least one pixel in each axis.
    /// Whether it fits a particular image is checked where it is applied.
    pub fn new(x0: usize, y0: usize, w: usize, h: usize) -> Result<Self> {
        if w == 0 || h == 0 {
            return Err(Error::InvalidParams(format!(
                "region extent {w}x{h} must be positive"
            )));
        }
        Ok(Self { x0, y0, w, h })
    }

    /// The full-image region for the given image.
    pub fn full(image: &GrayImage) -> Self {
        Self {
            x0: 0,
            y0: 0,
            w: image.width(),
            h: image.height(),
        }
    }
}
