//! Synthetic test images with analytically known properties: a Sierpinski
//! carpet (exact box-count oracle), midpoint-displacement fractional
//! Brownian surfaces (dimension 3 - H), and bright-blob phantoms with
//! recorded ground truth.
//!
//! Every generator is a pure function of its arguments; reruns are
//! bitwise identical.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, GrayImage};

/// SplitMix64. Hand-rolled so generated fixtures never drift with an
/// external RNG crate's internals.
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub(crate) fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, n).
    pub(crate) fn next_below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Standard normal via Box-Muller.
    pub(crate) fn next_gaussian(&mut self) -> f64 {
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

/// Sierpinski carpet of the given order on a 3^order grid.
///
/// A pixel is foreground unless some base-3 digit pair of its (row, col)
/// coordinates is (1, 1), so the foreground count is exactly 8^order.
pub fn sierpinski_carpet(order: u32) -> Result<BinaryMask> {
    if !(1..=7).contains(&order) {
        return Err(Error::param(format!("carpet order {order} outside 1..=7")));
    }
    let size = 3usize.pow(order);
    Ok(BinaryMask::from_fn(size, size, |row, col| {
        let (mut r, mut c) = (row, col);
        while r > 0 || c > 0 {
            if r % 3 == 1 && c % 3 == 1 {
                return false;
            }
            r /= 3;
            c /= 3;
        }
        true
    }))
}

const FBM_SIZES: [usize; 4] = [65, 129, 257, 513];

/// Fractional Brownian surface by midpoint displacement (diamond-square),
/// normalized to the full 0..=255 range.
///
/// `hurst` in (0, 1] controls roughness: the displacement amplitude decays
/// by 2^-hurst per subdivision level, which yields a surface of fractal
/// dimension close to 3 - hurst. `size` must be a supported power of two
/// plus one.
pub fn fbm_surface(hurst: f64, size: usize, seed: u64) -> Result<GrayImage> {
    if !FBM_SIZES.contains(&size) {
        return Err(Error::param(format!(
            "fbm size {size} not one of {FBM_SIZES:?}"
        )));
    }
    if !(hurst > 0.0 && hurst <= 1.0) {
        return Err(Error::param(format!("hurst {hurst} outside (0, 1]")));
    }

    let n = size - 1;
    let mut grid = vec![0.0f64; size * size];
    let mut rng = SplitMix64::new(seed);
    let idx = |r: usize, c: usize| r * size + c;

    let mut delta = 1.0f64;
    grid[idx(0, 0)] = delta * rng.next_gaussian();
    grid[idx(0, n)] = delta * rng.next_gaussian();
    grid[idx(n, 0)] = delta * rng.next_gaussian();
    grid[idx(n, n)] = delta * rng.next_gaussian();

    let level_decay = 0.5f64.powf(hurst / 2.0);
    let mut step = n;
    while step >= 2 {
        let half = step / 2;

        // Diamond pass: cell centers from the four diagonal corners.
        delta *= level_decay;
        for r in (half..n).step_by(step) {
            for c in (half..n).step_by(step) {
                let avg = (grid[idx(r - half, c - half)]
                    + grid[idx(r - half, c + half)]
                    + grid[idx(r + half, c - half)]
                    + grid[idx(r + half, c + half)])
                    / 4.0;
                grid[idx(r, c)] = avg + delta * rng.next_gaussian();
            }
        }

        // Square pass: edge midpoints from the axial neighbors present.
        delta *= level_decay;
        for r in (0..=n).step_by(half) {
            let offset = if (r / half) % 2 == 0 { half } else { 0 };
            for c in (offset..=n).step_by(step) {
                let mut sum = 0.0;
                let mut count = 0.0;
                if r >= half {
                    sum += grid[idx(r - half, c)];
                    count += 1.0;
                }
                if r + half <= n {
                    sum += grid[idx(r + half, c)];
                    count += 1.0;
                }
                if c >= half {
                    sum += grid[idx(r, c - half)];
                    count += 1.0;
                }
                if c + half <= n {
                    sum += grid[idx(r, c + half)];
                    count += 1.0;
                }
                grid[idx(r, c)] = sum / count + delta * rng.next_gaussian();
            }
        }

        step = half;
    }

    let min = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let max = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if max > min { max - min } else { 1.0 };
    Ok(GrayImage::from_fn(size, size, |r, c| {
        (((grid[idx(r, c)] - min) / span) * 255.0).round() as u8
    }))
}

/// Ground truth recorded alongside a generated phantom.
#[derive(Debug, Clone, Serialize)]
pub struct PhantomTruth {
    /// (row, col) of every blob center.
    pub blob_centers: Vec<(usize, usize)>,
    /// Nominal blob radius in pixels, shared by all blobs.
    pub blob_radius: usize,
    /// Seed the image was generated from.
    pub background_seed: u64,
}

/// Synthetic mammogram stand-in: a smooth inhomogeneous background
/// (peak below 120), `blobs` bright Gaussian spots peaking above 220, and
/// mild seeded noise.
///
/// Centers keep at least `4 * radius` between each other and away from the
/// border so clusters stay resolvable downstream; the actual margins used
/// are wider. Fails with a parameter error when that many blobs cannot be
/// placed.
pub fn phantom(blobs: usize, size: usize, seed: u64) -> Result<(GrayImage, PhantomTruth)> {
    if size < 128 {
        return Err(Error::param(format!("phantom size {size} below 128")));
    }
    if !(1..=20).contains(&blobs) {
        return Err(Error::param(format!("blob count {blobs} outside 1..=20")));
    }

    let mut rng = SplitMix64::new(seed);
    let radius = 2 + rng.next_below(3) as usize; // 2..=4
    let sigma = 0.5 * radius as f64 + 0.5;
    let margin = 4 * radius + 6;
    let min_sep = (8 * radius) as f64;

    let span = (size - 2 * margin) as u64;
    let mut centers: Vec<(usize, usize)> = Vec::with_capacity(blobs);
    let mut attempts = 0usize;
    while centers.len() < blobs {
        attempts += 1;
        if attempts > 20_000 {
            return Err(Error::param(format!(
                "could not place {blobs} blobs with separation {min_sep} in a {size}x{size} image"
            )));
        }
        let r = margin + rng.next_below(span) as usize;
        let c = margin + rng.next_below(span) as usize;
        let far_enough = centers.iter().all(|&(cr, cc)| {
            let dr = cr as f64 - r as f64;
            let dc = cc as f64 - c as f64;
            (dr * dr + dc * dc).sqrt() >= min_sep
        });
        if far_enough {
            centers.push((r, c));
        }
    }

    // Background phases; drawn before the per-pixel noise so placement and
    // background stay independent of blob count only through the rng stream.
    let p1 = rng.next_f64();
    let p2 = rng.next_f64();
    let p3 = rng.next_f64();
    let p4 = rng.next_f64();

    let w = size as f64;
    let background = |r: usize, c: usize| -> f64 {
        let u = c as f64 / w;
        let v = r as f64 / w;
        50.0 + 25.0
            * (std::f64::consts::PI * (u + p1)).sin()
            * (std::f64::consts::PI * (v + p2)).sin()
            + 15.0
                * (std::f64::consts::TAU * (u * 0.5 + p3)).sin()
                * (std::f64::consts::TAU * (v * 0.5 + p4)).sin()
    };

    let mut image = GrayImage::filled(size, size, 0).expect("size checked above");
    for r in 0..size {
        for c in 0..size {
            let mut value = background(r, c);
            for &(cr, cc) in &centers {
                let dr = r as f64 - cr as f64;
                let dc = c as f64 - cc as f64;
                let d2 = dr * dr + dc * dc;
                // Beyond ~5 sigma the contribution is sub-quantization.
                if d2 < (6.0 * sigma) * (6.0 * sigma) {
                    let amplitude = 253.0 - background(cr, cc);
                    value += amplitude * (-d2 / (2.0 * sigma * sigma)).exp();
                }
            }
            let noise = (1.2 * rng.next_gaussian()).clamp(-4.0, 4.0);
            image.set(r, c, (value + noise).round().clamp(0.0, 255.0) as u8);
        }
    }

    Ok((
        image,
        PhantomTruth {
            blob_centers: centers,
            blob_radius: radius,
            background_seed: seed,
        },
    ))
}
