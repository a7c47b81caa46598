//! Property tests for the numerical invariants the library promises.

use grayhist::{
    apply_threshold, bbhe_decompose, compute_histogram, cumulative, equalize_bbhe, equalize_he,
    he_map, load_pgm, normalize, region_statistics, sample_mean, sample_std, save_pgm, GrayImage,
    PgmVariant, RegionOfInterest, SnrKind,
};
use proptest::prelude::*;

/// Random image up to 24x24 with a level count drawn from {4, 16, 256}.
fn arb_image() -> impl Strategy<Value = GrayImage> {
    (1usize..=24, 1usize..=24, prop_oneof![Just(4usize), Just(16), Just(256)]).prop_flat_map(
        |(w, h, levels)| {
            proptest::collection::vec(0..levels as u16, w * h).prop_map(move |raw| {
                let pixels = raw.into_iter().map(|v| v as u8).collect();
                GrayImage::new(w, h, levels, pixels).unwrap()
            })
        },
    )
}

proptest! {
    /// Both PGM encodings restore the image exactly.
    #[test]
    fn pgm_round_trip(img in arb_image()) {
        for variant in [PgmVariant::Plain, PgmVariant::Raw] {
            let decoded = load_pgm(&save_pgm(&img, variant)).unwrap();
            prop_assert_eq!(&decoded, &img);
        }
    }

    /// Extracting the full-image region copies the pixels unchanged.
    #[test]
    fn full_region_extraction_is_identity(img in arb_image()) {
        let out = img.extract_region(RegionOfInterest::full(&img)).unwrap();
        prop_assert_eq!(out, img);
    }

    /// Histogram counts total exactly the pixel count, and the histogram
    /// ignores pixel positions.
    #[test]
    fn histogram_conserves_counts_and_ignores_positions(
        img in arb_image(),
        seed in any::<u64>(),
    ) {
        let hist = compute_histogram(&img, None).unwrap();
        prop_assert_eq!(hist.bins().iter().sum::<u64>(), img.len() as u64);
        prop_assert_eq!(hist.total(), img.len() as u64);

        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut shuffled = img.pixels().to_vec();
        shuffled.shuffle(&mut rng);
        // Any rectangle with the same pixel multiset has the same histogram,
        // and the same position-free statistics.
        let permuted = GrayImage::new(img.len(), 1, img.levels(), shuffled).unwrap();
        let permuted_hist = compute_histogram(&permuted, None).unwrap();
        prop_assert_eq!(hist.bins(), permuted_hist.bins());
        let (a, b) = (
            sample_mean(&img, None).unwrap(),
            sample_mean(&permuted, None).unwrap(),
        );
        prop_assert!((a - b).abs() <= 1e-12);
        if img.len() >= 2 {
            let (a, b) = (
                sample_std(&img, None).unwrap(),
                sample_std(&permuted, None).unwrap(),
            );
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    /// The normalized histogram is a probability mass function and its
    /// running sum is a cdf ending at one.
    #[test]
    fn pmf_and_cdf_axioms(img in arb_image()) {
        let norm = normalize(&compute_histogram(&img, None).unwrap()).unwrap();
        prop_assert!(norm.probs().iter().all(|&p| p >= 0.0));
        let sum: f64 = norm.probs().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-9);

        let cdf = cumulative(&norm);
        prop_assert!(cdf.values().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!((cdf.value(img.levels() - 1) - 1.0).abs() <= 1e-9);
        prop_assert!(cdf.values().iter().all(|&c| (0.0..=1.0 + 1e-9).contains(&c)));
    }

    /// Shifting every pixel by a constant (no clipping) shifts the mean by
    /// exactly that constant and leaves the deviation unchanged.
    #[test]
    fn constant_shift_moves_mean_not_std(img in arb_image(), shift in 1u16..=32) {
        let headroom = img.levels() as u16 - 1
            - img.pixels().iter().map(|&v| v as u16).max().unwrap();
        let c = shift.min(headroom) as u8;
        let shifted_pixels = img.pixels().iter().map(|&v| v + c).collect();
        let shifted = GrayImage::new(img.width(), img.height(), img.levels(), shifted_pixels)
            .unwrap();

        let mean = sample_mean(&img, None).unwrap();
        let shifted_mean = sample_mean(&shifted, None).unwrap();
        prop_assert!((shifted_mean - mean - c as f64).abs() <= 1e-9);

        if img.len() >= 2 {
            let std = sample_std(&img, None).unwrap();
            let shifted_std = sample_std(&shifted, None).unwrap();
            prop_assert!((std - shifted_std).abs() <= 1e-9);
        }
    }

    /// Aggregate statistics sit inside the region's extrema.
    #[test]
    fn statistics_respect_extrema(img in arb_image()) {
        prop_assume!(img.len() >= 2);
        let s = region_statistics(&img, None, None, SnrKind::Range);
        // An all-zero region has no coefficient of variation.
        prop_assume!(s.is_ok());
        let s = s.unwrap();
        prop_assert!(s.min <= s.median && s.median <= s.max);
        prop_assert!(s.min <= s.mode && s.mode <= s.max);
        prop_assert!(s.min as f64 <= s.mean && s.mean <= s.max as f64);
        let constant = img.pixels().iter().all(|&v| v == img.pixels()[0]);
        prop_assert_eq!(s.std == 0.0, constant);
        prop_assert!((s.cv - s.std / s.mean * 100.0).abs() <= 1e-9);
    }

    /// The equalization map never decreases and tops out at the highest
    /// occupied level.
    #[test]
    fn he_map_is_monotone_and_bounded(img in arb_image()) {
        let hist = compute_histogram(&img, None).unwrap();
        let map = he_map(&hist).unwrap();
        prop_assert!(map.is_non_decreasing());
        let top = (img.levels() - 1) as u8;
        prop_assert!(map.as_slice().iter().all(|&v| v <= top));
        let highest_occupied = (0..img.levels()).rev().find(|&x| hist.bin(x) > 0).unwrap();
        prop_assert_eq!(map.map(highest_occupied as u8), top);
        // Monotone maps preserve the weak order of pixel values.
        let out = equalize_he(&img).unwrap();
        for (a, b) in img.pixels().iter().zip(out.pixels()) {
            prop_assert!(map.map(*a) == *b);
        }
    }

    /// Pixels at or below the split level stay below it, pixels above stay
    /// above, and the side counts partition the image.
    #[test]
    fn bbhe_respects_the_split(img in arb_image()) {
        let d = bbhe_decompose(&img).unwrap();
        prop_assert_eq!(d.lower_count() + d.upper_count(), img.len() as u64);
        let out = equalize_bbhe(&img).unwrap();
        let m = d.mean_level();
        let mut below = 0u64;
        for (&x, &y) in img.pixels().iter().zip(out.pixels()) {
            if x <= m {
                prop_assert!(y <= m);
                below += 1;
            } else {
                prop_assert!(y > m && (y as usize) < img.levels());
            }
        }
        prop_assert_eq!(below, d.lower_count());
        let out_below = out.pixels().iter().filter(|&&y| y <= m).count() as u64;
        prop_assert_eq!(out_below, d.lower_count());
    }

    /// Masks partition the image, and raising the threshold never adds
    /// foreground.
    #[test]
    fn threshold_masks_partition_and_shrink(img in arb_image(), t in 0u8..=255) {
        let top = (img.levels() - 1) as u8;
        let t = t.min(top);
        let mask = apply_threshold(&img, t).unwrap();
        let trues = mask.count_true();
        prop_assert_eq!(trues + mask.bits().iter().filter(|&&b| !b).count(), img.len());
        if t < top {
            let tighter = apply_threshold(&img, t + 1).unwrap();
            for (a, b) in mask.bits().iter().zip(tighter.bits()) {
                prop_assert!(*a || !*b, "raising the threshold turned a bit on");
            }
        }
    }
}
