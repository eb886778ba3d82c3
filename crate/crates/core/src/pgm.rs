//! Portable graymap (PGM) decoding and encoding.
//!
//! Both the binary (`P5`) and ASCII (`P2`) flavors are read; only `P5` is
//! written. The header is three whitespace-separated integers (width,
//! height, maxval) with `#` comments allowed between tokens. A `P5` payload
//! starts after exactly one whitespace byte following the maxval token.
//! Maxval above 255 (16-bit samples) is not handled.

use crate::error::{Error, Result};
use crate::raster::GrayImage;

const WHITESPACE: &[u8] = b" \t\r\n\x0b\x0c";

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Cursor { bytes, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn remaining(&self) -> &'a [u8] {
        &self.bytes[self.pos..]
    }

    /// Skips whitespace runs and `#` comments (comment runs to end of line).
    fn skip_separators(&mut self) {
        while let Some(b) = self.peek() {
            if WHITESPACE.contains(&b) {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(b) = self.peek() {
                    self.pos += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Reads the next unsigned decimal token.
    fn next_uint(&mut self, what: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(Error::format(format!("expected {what} token")));
        }
        let token = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are ascii");
        token
            .parse::<u32>()
            .map_err(|_| Error::format(format!("{what} out of range: {token}")))
    }

    /// True when only separators (whitespace, comments) remain.
    fn at_trailing_end(&mut self) -> bool {
        self.skip_separators();
        self.pos == self.bytes.len()
    }
}

/// Decodes a `P5` or `P2` graymap.
pub fn decode_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 {
        return Err(Error::format("input shorter than a PGM magic"));
    }
    let magic = &bytes[..2];
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        _ => {
            return Err(Error::format(format!(
                "bad magic {:?}, expected P5 or P2",
                String::from_utf8_lossy(magic)
            )))
        }
    };

    let mut cur = Cursor::new(&bytes[2..]);
    let width = cur.next_uint("width")? as usize;
    let height = cur.next_uint("height")? as usize;
    let maxval = cur.next_uint("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::format("zero image dimension in header"));
    }
    if maxval == 0 {
        return Err(Error::format("maxval must be positive"));
    }
    if maxval > 255 {
        return Err(Error::Unsupported(format!(
            "maxval {maxval} exceeds 255 (16-bit samples not handled)"
        )));
    }

    let expected = width * height;
    let pixels = if binary {
        // Exactly one whitespace byte separates the header from the payload.
        match cur.peek() {
            Some(b) if WHITESPACE.contains(&b) => cur.pos += 1,
            _ => return Err(Error::format("missing whitespace before P5 payload")),
        }
        let payload = cur.remaining();
        if payload.len() != expected {
            return Err(Error::Truncated {
                expected,
                actual: payload.len(),
            });
        }
        payload.to_vec()
    } else {
        let mut samples = Vec::with_capacity(expected);
        while samples.len() < expected {
            cur.skip_separators();
            if cur.pos == cur.bytes.len() {
                return Err(Error::Truncated {
                    expected,
                    actual: samples.len(),
                });
            }
            let v = cur.next_uint("sample")?;
            if v > 255 {
                return Err(Error::format(format!("sample {v} exceeds 255")));
            }
            samples.push(v as u8);
        }
        if !cur.at_trailing_end() {
            return Err(Error::Truncated {
                expected,
                actual: expected + 1,
            });
        }
        samples
    };

    GrayImage::new(width, height, pixels)
}

/// Encodes as binary `P5` with maxval 255. Total on valid images.
pub fn encode_pgm(image: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.pixels().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(image.pixels());
    out
}

/// Reads and decodes a PGM file.
pub fn read_pgm_file(path: &std::path::Path) -> Result<GrayImage> {
    decode_pgm(&std::fs::read(path)?)
}

/// Encodes and writes a PGM file.
pub fn write_pgm_file(path: &std::path::Path, image: &GrayImage) -> Result<()> {
    std::fs::write(path, encode_pgm(image))?;
    Ok(())
}
