//! Sobel gradients and threshold-factor edge binarization.
//!
//! The gradient pair is the classic 3x3 Sobel: with the neighborhood
//! labelled z1..z9 row-major around a pixel,
//!
//! ```text
//! gx = (z7 + 2*z8 + z9) - (z1 + 2*z2 + z3)    bottom minus top rows
//! gy = (z3 + 2*z6 + z9) - (z1 + 2*z4 + z7)    right minus left columns
//! ```
//!
//! Borders replicate the edge pixel. The binarization cutoff is an
//! automatic base (a multiple of the mean gradient magnitude) scaled by a
//! factor in (0, 1] - either the fixed fudge factor or the image's Hurst
//! coefficient.

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, GrayImage};

/// Multiplier on the mean gradient magnitude that forms the automatic
/// base threshold.
pub const DEFAULT_SOBEL_SCALE: f64 = 4.0;

/// Per-pixel Sobel responses together with their Euclidean magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    width: usize,
    height: usize,
    gx: Vec<i32>,
    gy: Vec<i32>,
    magnitude: Vec<f64>,
}

impl GradientField {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn gx(&self, row: usize, col: usize) -> i32 {
        self.gx[row * self.width + col]
    }

    #[inline]
    pub fn gy(&self, row: usize, col: usize) -> i32 {
        self.gy[row * self.width + col]
    }

    #[inline]
    pub fn magnitude(&self, row: usize, col: usize) -> f64 {
        self.magnitude[row * self.width + col]
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitude
    }

    pub fn mean_magnitude(&self) -> f64 {
        self.magnitude.iter().sum::<f64>() / self.magnitude.len() as f64
    }

    /// Renders the magnitude for inspection, linearly rescaling the peak
    /// to 255. A zero field renders black.
    pub fn magnitude_image(&self) -> GrayImage {
        let max = self.magnitude.iter().copied().fold(0.0f64, f64::max);
        GrayImage::from_fn(self.width, self.height, |r, c| {
            if max == 0.0 {
                0
            } else {
                (self.magnitude(r, c) / max * 255.0).round() as u8
            }
        })
    }
}

/// Computes the Sobel gradient field with replicate borders. Needs at
/// least a 3x3 image.
pub fn sobel_gradients(image: &GrayImage) -> Result<GradientField> {
    if image.width() < 3 || image.height() < 3 {
        return Err(Error::param(format!(
            "image {}x{} too small for a 3x3 Sobel window",
            image.width(),
            image.height()
        )));
    }
    let w = image.width();
    let h = image.height();
    let mut gx = Vec::with_capacity(w * h);
    let mut gy = Vec::with_capacity(w * h);
    let mut magnitude = Vec::with_capacity(w * h);
    for r in 0..h as isize {
        for c in 0..w as isize {
            let z = |dr: isize, dc: isize| image.get_replicated(r + dr, c + dc) as i32;
            let (z1, z2, z3) = (z(-1, -1), z(-1, 0), z(-1, 1));
            let (z4, z6) = (z(0, -1), z(0, 1));
            let (z7, z8, z9) = (z(1, -1), z(1, 0), z(1, 1));
            let dx = (z7 + 2 * z8 + z9) - (z1 + 2 * z2 + z3);
            let dy = (z3 + 2 * z6 + z9) - (z1 + 2 * z4 + z7);
            gx.push(dx);
            gy.push(dy);
            magnitude.push(f64::from(dx * dx + dy * dy).sqrt());
        }
    }
    Ok(GradientField {
        width: w,
        height: h,
        gx,
        gy,
        magnitude,
    })
}

/// Automatic cutoff plus the factor that scales it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeThreshold {
    /// Automatic cutoff in gradient-magnitude units.
    pub base: f64,
    /// Multiplier in (0, 1].
    pub factor: f64,
    /// `base * factor`; the value magnitudes are compared against.
    pub effective: f64,
}

impl EdgeThreshold {
    /// Replaces the factor, revalidating its range.
    pub fn with_factor(self, factor: f64) -> Result<EdgeThreshold> {
        if !(factor > 0.0 && factor <= 1.0) {
            return Err(Error::param(format!(
                "threshold factor {factor} outside (0, 1]"
            )));
        }
        Ok(EdgeThreshold {
            base: self.base,
            factor,
            effective: self.base * factor,
        })
    }
}

/// Base threshold from the default scale; see [`auto_threshold_scaled`].
pub fn auto_threshold(field: &GradientField) -> EdgeThreshold {
    auto_threshold_scaled(field, DEFAULT_SOBEL_SCALE)
}

/// Base threshold = `scale x mean magnitude` over all pixels. A zero
/// field yields base 0, which binarizes to an empty mask.
pub fn auto_threshold_scaled(field: &GradientField, scale: f64) -> EdgeThreshold {
    let base = scale * field.mean_magnitude();
    EdgeThreshold {
        base,
        factor: 1.0,
        effective: base,
    }
}

/// Marks pixels whose magnitude strictly exceeds `effective`.
pub fn apply_threshold(field: &GradientField, effective: f64) -> BinaryMask {
    BinaryMask::from_fn(field.width(), field.height(), |r, c| {
        field.magnitude(r, c) > effective
    })
}

/// Binarizes against the default automatic threshold scaled by `factor`.
pub fn binarize_edges(field: &GradientField, factor: f64) -> Result<BinaryMask> {
    let threshold = auto_threshold(field).with_factor(factor)?;
    Ok(apply_threshold(field, threshold.effective))
}
