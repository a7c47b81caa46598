//! Deterministic synthetic test images sampled from 2D shape functions.
//!
//! Shapes are sampled at cell centers of an `n x n` grid covering the square
//! `[-extent, extent]^2`. Coordinates are computed as exact dyadic offsets
//! from the grid center, so mirrored sample points are exact negations and
//! the sampled fields inherit the shapes' symmetries bit-for-bit. Pyramid
//! and cone have no closed form here; they are discrete self-convolutions of
//! the sampled rectangle and pillbox, normalized by cell area.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// A shape function and its parameters. All parameters must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeSpec {
    /// `u(a^2 - x^2) u(b^2 - y^2) / (4ab)`: a box of unit integral.
    Rectangle { a: f64, b: f64 },
    /// Self-convolution of the rectangle.
    Pyramid { a: f64, b: f64 },
    /// `u(a^2 - r^2) / (pi a^2)`: a disk of unit integral.
    Pillbox { a: f64 },
    /// Self-convolution of the pillbox.
    Cone { a: f64 },
    /// `exp(-r^2 / sigma^2) / (2 pi sigma^2)`.
    Gaussian { sigma: f64 },
    /// `1 / r`, with `r` clamped below at half a cell width.
    Peak,
    /// `exp(-a r)`.
    ExpDecay { a: f64 },
}

impl ShapeSpec {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ShapeSpec::Rectangle { a, b } | ShapeSpec::Pyramid { a, b } => a > 0.0 && b > 0.0,
            ShapeSpec::Pillbox { a } | ShapeSpec::Cone { a } | ShapeSpec::ExpDecay { a } => a > 0.0,
            ShapeSpec::Gaussian { sigma } => sigma > 0.0,
            ShapeSpec::Peak => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "shape parameters must be positive: {self:?}"
            )))
        }
    }
}

/// An `n x n` grid of nonnegative samples over `[-extent, extent]^2`.
/// Stored row-major: the sample at grid position `(ix, iy)` is
/// `values[iy * n + ix]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    n: usize,
    extent: f64,
    values: Vec<f64>,
}

impl ScalarField {
    /// Samples per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Half-width of the sampled square domain.
    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sample at x-index `ix`, y-index `iy`.
    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.n + ix]
    }

    /// Width (= height) of one grid cell.
    pub fn cell_width(&self) -> f64 {
        2.0 * self.extent / self.n as f64
    }
}

/// Unit step: 1 for strictly positive arguments, else 0.
fn step(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Cell-center coordinate for index `i` on an `n`-cell axis. The offset
/// `(i + 0.5) - n/2` is an exact dyadic rational, so `coord(n-1-i)` is the
/// exact negation of `coord(i)`.
fn coord(i: usize, n: usize, cell: f64) -> f64 {
    ((i as f64 + 0.5) - n as f64 / 2.0) * cell
}

/// Samples a shape on an `n x n` cell-center grid over
/// `[-extent, extent]^2`.
pub fn sample_shape(spec: &ShapeSpec, n: usize, extent: f64) -> Result<ScalarField> {
    spec.validate()?;
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "grid size {n} must be at least 2"
        )));
    }
    if extent.is_nan() || extent <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "extent {extent} must be positive"
        )));
    }

    let cell = 2.0 * extent / n as f64;
    let values = match *spec {
        ShapeSpec::Rectangle { a, b } => sample_pointwise(n, cell, |x, y| rectangle(x, y, a, b)),
        ShapeSpec::Pillbox { a } => sample_pointwise(n, cell, |x, y| pillbox(x, y, a)),
        ShapeSpec::Gaussian { sigma } => sample_pointwise(n, cell, |x, y| {
            (-(x * x + y * y) / (sigma * sigma)).exp()
                / (2.0 * std::f64::consts::PI * sigma * sigma)
        }),
        ShapeSpec::Peak => {
            let r_min = cell / 2.0;
            sample_pointwise(n, cell, move |x, y| 1.0 / (x * x + y * y).sqrt().max(r_min))
        }
        ShapeSpec::ExpDecay { a } => {
            sample_pointwise(n, cell, |x, y| (-a * (x * x + y * y).sqrt()).exp())
        }
        ShapeSpec::Pyramid { a, b } => pyramid(n, cell, a, b),
        ShapeSpec::Cone { a } => cone(n, cell, a),
    };

    Ok(ScalarField { n, extent, values })
}

fn rectangle(x: f64, y: f64, a: f64, b: f64) -> f64 {
    step(a * a - x * x) * step(b * b - y * y) / (4.0 * a * b)
}

fn pillbox(x: f64, y: f64, a: f64) -> f64 {
    step(a * a - (x * x + y * y)) / (std::f64::consts::PI * a * a)
}

fn sample_pointwise(n: usize, cell: f64, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let mut values = vec![0.0; n * n];
    for iy in 0..n {
        let y = coord(iy, n, cell);
        for ix in 0..n {
            values[iy * n + ix] = f(coord(ix, n, cell), y);
        }
    }
    values
}

/// 1D box profile of half-width `a` and height `1/(2a)`.
fn box1d(t: f64, a: f64) -> f64 {
    step(a * a - t * t) / (2.0 * a)
}

/// Discrete 1D self-convolution of the sampled box, evaluated back on the
/// sample grid. Only the first half is computed; the rest is mirrored so the
/// triangle is exactly even.
fn triangle1d(n: usize, cell: f64, a: f64) -> Vec<f64> {
    let samples: Vec<f64> = (0..n).map(|k| box1d(coord(k, n, cell), a)).collect();
    let mut out = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let x = coord(i, n, cell);
        let mut acc = 0.0;
        for (k, &s) in samples.iter().enumerate() {
            if s != 0.0 {
                acc += s * box1d(x - coord(k, n, cell), a);
            }
        }
        let v = acc * cell;
        out[i] = v;
        out[n - 1 - i] = v;
    }
    out
}

/// The rectangle's self-convolution separates into a product of 1D
/// triangles.
fn pyramid(n: usize, cell: f64, a: f64, b: f64) -> Vec<f64> {
    let tx = triangle1d(n, cell, a);
    let ty = triangle1d(n, cell, b);
    let mut values = vec![0.0; n * n];
    for iy in 0..n {
        for ix in 0..n {
            values[iy * n + ix] = tx[ix] * ty[iy];
        }
    }
    values
}

/// Discrete 2D self-convolution of the sampled pillbox. One octant is
/// computed directly and reflected through the disk's eight symmetries, so
/// the sampled cone is exactly symmetric.
fn cone(n: usize, cell: f64, a: f64) -> Vec<f64> {
    // Nonzero base cells with their coordinates; the pillbox is constant
    // inside the disk.
    let height = 1.0 / (std::f64::consts::PI * a * a);
    let mut support = Vec::new();
    for ky in 0..n {
        let y = coord(ky, n, cell);
        for kx in 0..n {
            let x = coord(kx, n, cell);
            if a * a - (x * x + y * y) > 0.0 {
                support.push((x, y));
            }
        }
    }

    let cell_area = cell * cell;
    let mut values = vec![0.0; n * n];
    let last = n - 1;
    for iy in 0..n.div_ceil(2) {
        let y = coord(iy, n, cell);
        for ix in iy..n.div_ceil(2) {
            let x = coord(ix, n, cell);
            let mut acc = 0.0;
            for &(sx, sy) in &support {
                acc += pillbox(x - sx, y - sy, a);
            }
            let v = acc * height * cell_area;
            for &(px, py) in &[
                (ix, iy),
                (iy, ix),
                (last - ix, iy),
                (iy, last - ix),
                (ix, last - iy),
                (last - iy, ix),
                (last - ix, last - iy),
                (last - iy, last - ix),
            ] {
                values[py * n + px] = v;
            }
        }
    }
    values
}

/// Maps `[0, max(values)]` affinely onto `[0, L-1]`, rounding half away
/// from zero. An all-equal positive field lands on `L-1`.
pub fn quantize_field(field: &ScalarField, levels: usize) -> Result<GrayImage> {
    if !(2..=256).contains(&levels) || !levels.is_power_of_two() {
        return Err(Error::InvalidLevels(levels));
    }
    let max = field.values().iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return Err(Error::DegenerateField);
    }
    let top = (levels - 1) as f64;
    let pixels = field
        .values()
        .iter()
        .map(|&v| (v / max * top).round() as u8)
        .collect();
    GrayImage::new(field.n(), field.n(), levels, pixels)
}
