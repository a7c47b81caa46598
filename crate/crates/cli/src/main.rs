//! Batch command-line interface for the grayhist toolkit.
//!
//! One subcommand per pipeline stage: `stats`, `hist`, `eq`, `segment`, and
//! `gen`. Every command is deterministic — identical invocations produce
//! identical bytes — and output files are written to a temporary file and
//! renamed, so a failure never leaves a partial file behind.
//!
//! Exit codes: 0 success, 2 I/O or malformed input, 3 invalid geometry or
//! parameters, 4 unknown method or shape, 5 algorithmic failure (histogram
//! not bimodal).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grayhist::{
    apply_threshold, compute_histogram, cumulative, equalize_bbhe, equalize_he, load_pgm,
    mask_to_image, normalize, quantize_field, region_statistics, report_rows, sample_shape,
    save_pgm, threshold_valley, Error, GrayImage, NoiseModel, PgmVariant, RegionOfInterest,
    ShapeSpec, SnrKind, ThresholdResult, DEFAULT_SMOOTH_WINDOW,
};

const EXIT_IO: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;
const EXIT_ALGORITHM: u8 = 5;

#[derive(Parser)]
#[command(
    name = "grayhist",
    version,
    about = "Grayscale histogram toolkit: statistics, equalization, segmentation, test patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a statistics report for one or more PGM images.
    Stats {
        /// Input images; each is reported independently.
        #[arg(required = true)]
        images: Vec<PathBuf>,
        /// Also report a region of interest, as `x,y,w,h`.
        #[arg(long)]
        roi: Option<String>,
        /// Noise standard deviation; enables the SNR row.
        #[arg(long)]
        noise_std: Option<f64>,
        /// SNR numerator: range, mean, or signal.
        #[arg(long, default_value = "range")]
        snr_kind: String,
    },
    /// Export a histogram as CSV.
    Hist {
        image: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Emit probabilities instead of counts.
        #[arg(long, conflicts_with = "cdf")]
        normalized: bool,
        /// Emit the cumulative distribution instead of counts.
        #[arg(long)]
        cdf: bool,
    },
    /// Equalize an image's histogram.
    Eq {
        input: PathBuf,
        output: PathBuf,
        /// Equalization method: he or bbhe.
        #[arg(long, default_value = "he")]
        method: String,
    },
    /// Threshold an image into a black-and-white mask.
    Segment {
        input: PathBuf,
        output: PathBuf,
        /// Threshold selection: valley or manual.
        #[arg(long, default_value = "valley")]
        method: String,
        /// Threshold level, required with --method manual.
        #[arg(long)]
        threshold: Option<u32>,
        /// Smoothing window for valley detection (odd).
        #[arg(long)]
        window: Option<usize>,
    },
    /// Generate a synthetic test image.
    Gen {
        /// Shape: rectangle, pyramid, pillbox, cone, gaussian, peak, expdecay.
        #[arg(long)]
        shape: String,
        /// Samples per axis.
        #[arg(long, default_value_t = 256)]
        size: usize,
        /// Half-width of the sampled domain.
        #[arg(long, default_value_t = 0.5)]
        extent: f64,
        /// Gray levels in the output image.
        #[arg(long, default_value_t = 256)]
        levels: usize,
        /// Output PGM path.
        #[arg(long)]
        out: PathBuf,
        /// Shape parameters as key=value (a=0.25, b=0.5, sigma=0.1).
        params: Vec<String>,
    },
}

/// An error carrying the exit code it maps to.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::MalformedHeader(_) | Error::TruncatedData { .. } | Error::UnsupportedMaxval(_) => {
                EXIT_IO
            }
            Error::NotBimodal => EXIT_ALGORITHM,
            _ => EXIT_INVALID,
        };
        CliError::new(code, err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::new(EXIT_IO, err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Stats {
            images,
            roi,
            noise_std,
            snr_kind,
        } => run_stats(&images, roi.as_deref(), noise_std, &snr_kind),
        Command::Hist {
            image,
            out,
            normalized,
            cdf,
        } => report(run_hist(&image, &out, normalized, cdf)),
        Command::Eq {
            input,
            output,
            method,
        } => report(run_eq(&input, &output, &method)),
        Command::Segment {
            input,
            output,
            method,
            threshold,
            window,
        } => report(run_segment(&input, &output, &method, threshold, window)),
        Command::Gen {
            shape,
            size,
            extent,
            levels,
            out,
            params,
        } => report(run_gen(&shape, size, extent, levels, &out, &params)),
    };
    ExitCode::from(code)
}

fn report(result: Result<(), CliError>) -> u8 {
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("grayhist: {}", e.message);
            e.code
        }
    }
}

fn load_image(path: &Path) -> Result<GrayImage, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    load_pgm(&bytes).map_err(|e| {
        let code = CliError::from(e.clone()).code;
        CliError::new(code, format!("{}: {e}", path.display()))
    })
}

/// Writes via a temporary file in the destination directory so failures
/// never leave partial output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    tmp.write_all(bytes)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    Ok(())
}

fn parse_roi(s: &str) -> Result<RegionOfInterest, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let invalid = || CliError::new(EXIT_INVALID, format!("invalid ROI {s:?}: expected x,y,w,h"));
    if parts.len() != 4 {
        return Err(invalid());
    }
    let mut nums = [0usize; 4];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| invalid())?;
    }
    RegionOfInterest::new(nums[0], nums[1], nums[2], nums[3]).map_err(CliError::from)
}

fn parse_snr_kind(s: &str) -> Result<SnrKind, CliError> {
    match s {
        "range" => Ok(SnrKind::Range),
        "mean" => Ok(SnrKind::Mean),
        "signal" => Ok(SnrKind::Signal),
        other => Err(CliError::new(
            EXIT_UNKNOWN,
            format!("unknown SNR kind {other:?} (expected range, mean, or signal)"),
        )),
    }
}

fn run_stats(images: &[PathBuf], roi: Option<&str>, noise_std: Option<f64>, snr_kind: &str) -> u8 {
    let prepared = (|| -> Result<_, CliError> {
        let kind = parse_snr_kind(snr_kind)?;
        let roi = roi.map(parse_roi).transpose()?;
        let noise = noise_std.map(NoiseModel::new).transpose()?;
        Ok((kind, roi, noise))
    })();
    let (kind, roi, noise) = match prepared {
        Ok(p) => p,
        Err(e) => {
            eprintln!("grayhist: {}", e.message);
            return e.code;
        }
    };

    // Batch mode: report each file independently, keep the worst exit code.
    let mut worst = 0u8;
    for path in images {
        match stats_report(path, roi, noise, kind) {
            Ok(text) => {
                if images.len() > 1 {
                    println!("== {}", path.display());
                }
                print!("{text}");
            }
            Err(e) => {
                eprintln!("grayhist: {}", e.message);
                worst = worst.max(e.code);
            }
        }
    }
    worst
}

fn stats_report(
    path: &Path,
    roi: Option<RegionOfInterest>,
    noise: Option<NoiseModel>,
    kind: SnrKind,
) -> Result<String, CliError> {
    let image = load_image(path)?;
    let whole = region_statistics(&image, None, noise, kind)?;
    let mut out = String::new();
    match roi {
        None => {
            for (label, value) in report_rows(&whole) {
                out.push_str(&format!("{label}\t{value}\n"));
            }
        }
        Some(roi) => {
            let region = region_statistics(&image, Some(roi), noise, kind)?;
            for ((label, whole_value), (_, roi_value)) in
                report_rows(&whole).into_iter().zip(report_rows(&region))
            {
                out.push_str(&format!("{label}\t{whole_value}\t{roi_value}\n"));
            }
        }
    }
    Ok(out)
}

fn run_hist(image: &Path, out: &Path, normalized: bool, cdf: bool) -> Result<(), CliError> {
    let img = load_image(image)?;
    let hist = compute_histogram(&img, None)?;
    let csv = if cdf {
        cumulative(&normalize(&hist)?).cdf_csv()
    } else if normalized {
        normalize(&hist)?.probabilities_csv()
    } else {
        hist.counts_csv()
    };
    write_atomic(out, csv.as_bytes())
}

fn run_eq(input: &Path, output: &Path, method: &str) -> Result<(), CliError> {
    let img = load_image(input)?;
    let result = match method {
        "he" => equalize_he(&img)?,
        "bbhe" => equalize_bbhe(&img)?,
        other => {
            return Err(CliError::new(
                EXIT_UNKNOWN,
                format!("unknown equalization method {other:?} (expected he or bbhe)"),
            ))
        }
    };
    write_atomic(output, &save_pgm(&result, PgmVariant::Raw))
}

fn run_segment(
    input: &Path,
    output: &Path,
    method: &str,
    threshold: Option<u32>,
    window: Option<usize>,
) -> Result<(), CliError> {
    let img = load_image(input)?;
    let chosen = match method {
        "valley" => {
            let hist = compute_histogram(&img, None)?;
            threshold_valley(&hist, window.unwrap_or(DEFAULT_SMOOTH_WINDOW))?
        }
        "manual" => {
            let t = threshold.ok_or_else(|| {
                CliError::new(EXIT_INVALID, "--method manual requires --threshold")
            })?;
            if t as usize >= img.levels() {
                return Err(Error::ThresholdOutOfRange {
                    threshold: t,
                    levels: img.levels(),
                }
                .into());
            }
            ThresholdResult::manual(t as u8)
        }
        other => {
            return Err(CliError::new(
                EXIT_UNKNOWN,
                format!("unknown segmentation method {other:?} (expected valley or manual)"),
            ))
        }
    };
    let mask = apply_threshold(&img, chosen.threshold)?;
    write_atomic(output, &save_pgm(&mask_to_image(&mask), PgmVariant::Raw))?;
    println!("{}", chosen.threshold);
    Ok(())
}

fn run_gen(
    shape: &str,
    size: usize,
    extent: f64,
    levels: usize,
    out: &Path,
    params: &[String],
) -> Result<(), CliError> {
    let spec = parse_shape(shape, params)?;
    let field = sample_shape(&spec, size, extent)?;
    let image = quantize_field(&field, levels)?;
    write_atomic(out, &save_pgm(&image, PgmVariant::Raw))
}

fn parse_shape(name: &str, params: &[String]) -> Result<ShapeSpec, CliError> {
    let mut pairs = Vec::new();
    for param in params {
        let (key, value) = param.split_once('=').ok_or_else(|| {
            CliError::new(
                EXIT_INVALID,
                format!("invalid parameter {param:?}: expected key=value"),
            )
        })?;
        let value: f64 = value.trim().parse().map_err(|_| {
            CliError::new(EXIT_INVALID, format!("invalid value in {param:?}"))
        })?;
        pairs.push((key.trim(), value));
    }

    let take = |key: &str| -> Result<f64, CliError> {
        pairs
            .iter()
            .find(|(k, _)| *k == key || (key == "sigma" && *k == "σ"))
            .map(|&(_, v)| v)
            .ok_or_else(|| {
                CliError::new(
                    EXIT_INVALID,
                    format!("shape {name:?} requires parameter {key}=..."),
                )
            })
    };

    let (spec, expected): (ShapeSpec, &[&str]) = match name {
        "rectangle" => (
            ShapeSpec::Rectangle {
                a: take("a")?,
                b: take("b")?,
            },
            &["a", "b"],
        ),
        "pyramid" => (
            ShapeSpec::Pyramid {
                a: take("a")?,
                b: take("b")?,
            },
            &["a", "b"],
        ),
        "pillbox" => (ShapeSpec::Pillbox { a: take("a")? }, &["a"]),
        "cone" => (ShapeSpec::Cone { a: take("a")? }, &["a"]),
        "gaussian" => (
            ShapeSpec::Gaussian {
                sigma: take("sigma")?,
            },
            &["sigma"],
        ),
        "peak" => (ShapeSpec::Peak, &[]),
        "expdecay" => (ShapeSpec::ExpDecay { a: take("a")? }, &["a"]),
        other => {
            return Err(CliError::new(
                EXIT_UNKNOWN,
                format!("unknown shape {other:?}"),
            ))
        }
    };

    for (key, _) in &pairs {
        let known = expected.contains(key) || (*key == "σ" && expected.contains(&"sigma"));
        if !known {
            return Err(CliError::new(
                EXIT_INVALID,
                format!("shape {name:?} does not take parameter {key:?}"),
            ));
        }
    }
    Ok(spec)
}
