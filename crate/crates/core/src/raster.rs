//! Row-major raster containers: 8-bit grayscale images and boolean masks.

use crate::error::{Error, Result};

/// 2-D grid of 8-bit intensities, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Builds an image from row-major samples. `pixels.len()` must equal
    /// `width * height` and both dimensions must be nonzero.
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::param("image dimensions must be nonzero"));
        }
        if pixels.len() != width * height {
            return Err(Error::param(format!(
                "pixel buffer length {} does not match {}x{}",
                pixels.len(),
                width,
                height
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    /// Constant-valued image.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Builds an image by evaluating `f(row, col)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                pixels.push(f(r, c));
            }
        }
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        debug_assert!(row < self.height && col < self.width);
        self.pixels[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        debug_assert!(row < self.height && col < self.width);
        self.pixels[row * self.width + col] = value;
    }

    /// Reads with replicate padding: out-of-range coordinates clamp to the
    /// nearest edge pixel.
    #[inline]
    pub fn get_replicated(&self, row: isize, col: isize) -> u8 {
        let r = row.clamp(0, self.height as isize - 1) as usize;
        let c = col.clamp(0, self.width as isize - 1) as usize;
        self.pixels[r * self.width + c]
    }

    pub fn min_extent(&self) -> usize {
        self.width.min(self.height)
    }

    /// Largest side; the normalization base for box-counting ratios.
    pub fn max_extent(&self) -> usize {
        self.width.max(self.height)
    }
}

/// 2-D boolean grid, row-major. `true` is foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryMask {
    /// All-background mask.
    pub fn empty(width: usize, height: usize) -> Self {
        BinaryMask {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                bits.push(f(r, c));
            }
        }
        BinaryMask {
            width,
            height,
            bits,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.height && col < self.width);
        self.bits[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        debug_assert!(row < self.height && col < self.width);
        self.bits[row * self.width + col] = value;
    }

    /// Reads `false` outside the grid.
    #[inline]
    pub fn get_or_background(&self, row: isize, col: isize) -> bool {
        if row < 0 || col < 0 || row >= self.height as isize || col >= self.width as isize {
            false
        } else {
            self.bits[row as usize * self.width + col as usize]
        }
    }

    pub fn count_foreground(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty_mask(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// Pointwise complement over the grid.
    pub fn complement(&self) -> Self {
        BinaryMask {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    /// True when every foreground pixel of `self` is foreground in `other`.
    /// Panics if dimensions differ.
    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        assert_eq!((self.width, self.height), (other.width, other.height));
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Number of pixels where the two masks disagree.
    pub fn xor_count(&self, other: &BinaryMask) -> usize {
        assert_eq!((self.width, self.height), (other.width, other.height));
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(&a, &b)| a != b)
            .count()
    }

    /// Embeds the mask in a background frame `margin` pixels wide.
    pub fn padded(&self, margin: usize) -> Self {
        let mut out = BinaryMask::empty(self.width + 2 * margin, self.height + 2 * margin);
        for r in 0..self.height {
            for c in 0..self.width {
                if self.get(r, c) {
                    out.set(r + margin, c + margin, true);
                }
            }
        }
        out
    }

    /// Cuts the `width` x `height` window whose top-left corner is
    /// (`top`, `left`).
    pub fn cropped(&self, top: usize, left: usize, width: usize, height: usize) -> Self {
        assert!(top + height <= self.height && left + width <= self.width);
        BinaryMask::from_fn(width, height, |r, c| self.get(top + r, left + c))
    }

    /// Renders foreground as 255 and background as 0.
    pub fn to_gray(&self) -> GrayImage {
        GrayImage::from_fn(self.width, self.height, |r, c| {
            if self.get(r, c) {
                255
            } else {
                0
            }
        })
    }

    /// Reads a mask back from a grayscale rendering: nonzero is foreground.
    pub fn from_gray(image: &GrayImage) -> Self {
        BinaryMask::from_fn(image.width(), image.height(), |r, c| image.get(r, c) != 0)
    }

    pub fn min_extent(&self) -> usize {
        self.width.min(self.height)
    }

    pub fn max_extent(&self) -> usize {
        self.width.max(self.height)
    }
}
