//! PGM (Netpbm P2/P5) codec.
//!
//! Reads and writes the plain (`P2`, ASCII samples) and raw (`P5`, one byte
//! per sample) grayscale variants. Header comments (`#` to end of line) are
//! skipped on read and never emitted on write. maxval above 255 is rejected.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Which of the two PGM encodings to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmVariant {
    /// `P2`: ASCII decimal samples.
    Plain,
    /// `P5`: one raw byte per sample.
    Raw,
}

/// Decodes a PGM file.
///
/// The resulting image has `maxval + 1` levels when that count is a power of
/// two; otherwise the sample values are kept as-is and the level count is set
/// to 256, so statistics always run on raw intensities.
pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { bytes, pos: 0 };

    let magic = cur.token().ok_or_else(|| missing("magic"))?;
    let raw = match magic.as_slice() {
        b"P2" => false,
        b"P5" => true,
        other => {
            return Err(Error::MalformedHeader(format!(
                "bad magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };

    let width = cur.number().ok_or_else(|| missing("width"))?;
    let height = cur.number().ok_or_else(|| missing("height"))?;
    let maxval = cur.number().ok_or_else(|| missing("maxval"))?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedMaxval(maxval as u32));
    }
    if maxval == 0 {
        return Err(Error::MalformedHeader("maxval must be at least 1".into()));
    }

    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader("image dimensions overflow".into()))?;

    let pixels = if raw {
        // Exactly one whitespace byte separates the header from the samples.
        cur.expect_single_whitespace()?;
        let rest = &cur.bytes[cur.pos..];
        if rest.len() < expected {
            return Err(Error::TruncatedData {
                expected,
                actual: rest.len(),
            });
        }
        rest[..expected].to_vec()
    } else {
        let mut samples = Vec::with_capacity(expected.min(1 << 20));
        while samples.len() < expected {
            match cur.number() {
                Some(v) if v <= 255 => samples.push(v as u8),
                Some(v) => {
                    return Err(Error::PixelOutOfRange {
                        value: v as u32,
                        max: maxval as u32,
                    })
                }
                None => {
                    return Err(Error::TruncatedData {
                        expected,
                        actual: samples.len(),
                    })
                }
            }
        }
        samples
    };

    if let Some(&bad) = pixels.iter().find(|&&v| v as usize > maxval) {
        return Err(Error::PixelOutOfRange {
            value: bad as u32,
            max: maxval as u32,
        });
    }

    let candidate = maxval + 1;
    let levels = if candidate.is_power_of_two() {
        candidate
    } else {
        256
    };
    GrayImage::new(width, height, levels, pixels)
}

/// Encodes an image as PGM. Round trip: `load_pgm(&save_pgm(img, v)) == img`.
pub fn save_pgm(image: &GrayImage, variant: PgmVariant) -> Vec<u8> {
    let maxval = image.levels() - 1;
    match variant {
        PgmVariant::Raw => {
            let mut out = format!("P5\n{} {}\n{}\n", image.width(), image.height(), maxval)
                .into_bytes();
            out.extend_from_slice(image.pixels());
            out
        }
        PgmVariant::Plain => {
            let mut out = format!("P2\n{} {}\n{}\n", image.width(), image.height(), maxval);
            for row in image.pixels().chunks(image.width()) {
                let mut first = true;
                for &v in row {
                    if !first {
                        out.push(' ');
                    }
                    out.push_str(&v.to_string());
                    first = false;
                }
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

fn missing(what: &str) -> Error {
    Error::MalformedHeader(format!("missing {what}"))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    /// Advances past whitespace and `#` comments.
    fn skip_filler(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Next run of non-whitespace bytes, or `None` at end of input.
    fn token(&mut self) -> Option<Vec<u8>> {
        self.skip_filler();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && !self.bytes[self.pos].is_ascii_whitespace()
            && self.bytes[self.pos] != b'#'
        {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(self.bytes[start..self.pos].to_vec())
        }
    }

    /// Next token parsed as an unsigned decimal.
    fn number(&mut self) -> Option<usize> {
        let tok = self.token()?;
        std::str::from_utf8(&tok).ok()?.parse().ok()
    }

    fn expect_single_whitespace(&mut self) -> Result<()> {
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::MalformedHeader(
                "expected whitespace after maxval".into(),
            )),
        }
    }
}
