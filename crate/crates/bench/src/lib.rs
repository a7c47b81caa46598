//! Deterministic fixtures shared by the benchmark suite.

use grayhist::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniformly random 8-bit image with a fixed seed.
pub fn noisy_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pixels = (0..width * height).map(|_| rng.gen()).collect();
    GrayImage::new(width, height, 256, pixels).unwrap()
}

/// Bimodal image whose histogram is two Gaussian bumps, the shape valley
/// thresholding expects.
pub fn bimodal_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pixels = (0..width * height)
        .map(|_| {
            let center = if rng.gen_bool(0.5) { 64.0 } else { 192.0 };
            let sample: f64 = center + gaussian(&mut rng) * 10.0;
            sample.round().clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage::new(width, height, 256, pixels).unwrap()
}

/// Box-Muller standard normal.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
