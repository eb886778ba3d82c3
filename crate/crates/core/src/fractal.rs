//! Fractal dimension estimation.
//!
//! Two counters feed one least-squares fit: plain box counting for binary
//! masks (occupied cells per grid) and Sarkar-Chaudhuri differential box
//! counting for grayscale surfaces (stacked intensity boxes per cell). The
//! fitted dimension is the slope of log(count) against log(1/ratio) over
//! dyadic box sizes, and the Hurst coefficient is the topological dimension
//! minus the fitted dimension, clamped away from zero so it stays usable as
//! an edge-threshold factor.

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, GrayImage};

/// Lower clamp for the Hurst coefficient; keeps the downstream edge
/// threshold from collapsing to zero.
pub const HURST_MIN: f64 = 0.05;
/// Upper clamp for the Hurst coefficient.
pub const HURST_MAX: f64 = 1.0;

/// One grid scale: box side in pixels and the number of boxes it took to
/// cover the content.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleEntry {
    /// Box side `s`, a power of two.
    pub box_size: usize,
    /// Occupied-box count (binary) or summed column count (grayscale).
    pub count: u64,
}

/// Box counts over a dyadic ladder of scales, all normalized against one
/// base extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleSeries {
    base_extent: usize,
    entries: Vec<ScaleEntry>,
}

impl ScaleSeries {
    /// Assembles a series, enforcing strictly increasing power-of-two box
    /// sizes and positive counts.
    pub fn new(base_extent: usize, entries: Vec<ScaleEntry>) -> Result<Self> {
        if base_extent == 0 {
            return Err(Error::param("base extent must be positive"));
        }
        if entries.is_empty() {
            return Err(Error::param("scale series needs at least one entry"));
        }
        let mut prev = 1usize;
        for e in &entries {
            if !e.box_size.is_power_of_two() || e.box_size < 2 {
                return Err(Error::param(format!(
                    "box size {} is not a power of two >= 2",
                    e.box_size
                )));
            }
            if e.box_size <= prev {
                return Err(Error::param("box sizes must be strictly increasing"));
            }
            if e.count == 0 {
                return Err(Error::param("box counts must be positive"));
            }
            prev = e.box_size;
        }
        Ok(ScaleSeries {
            base_extent,
            entries,
        })
    }

    pub fn base_extent(&self) -> usize {
        self.base_extent
    }

    pub fn entries(&self) -> &[ScaleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Scale ratio `r = box_size / base_extent` for an entry.
    pub fn ratio(&self, index: usize) -> f64 {
        self.entries[index].box_size as f64 / self.base_extent as f64
    }

    /// CSV rendering: header `box_size,ratio,count`, one row per scale.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("box_size,ratio,count\n");
        for (i, e) in self.entries.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", e.box_size, self.ratio(i), e.count));
        }
        out
    }
}

/// Dyadic box sides used against a given base extent: 2, 4, 8, ... up to
/// half the extent.
pub fn box_sizes_for(base_extent: usize) -> Vec<usize> {
    (1..)
        .map(|j| 1usize << j)
        .take_while(|s| s * 2 <= base_extent)
        .collect()
}

const MIN_COUNTING_EXTENT: usize = 8;

/// Counts, per scale, the grid cells containing at least one foreground
/// pixel. Cells tile from the top-left; partial cells at the right/bottom
/// count as full cells.
pub fn box_count_binary(mask: &BinaryMask) -> Result<ScaleSeries> {
    if mask.min_extent() < MIN_COUNTING_EXTENT {
        return Err(Error::param(format!(
            "mask {}x{} too small for box counting (need {} per side)",
            mask.width(),
            mask.height(),
            MIN_COUNTING_EXTENT
        )));
    }
    if mask.is_empty_mask() {
        return Err(Error::EmptyInput);
    }
    let base = mask.max_extent();
    let entries = box_sizes_for(base)
        .into_iter()
        .map(|s| ScaleEntry {
            box_size: s,
            count: occupied_cells(mask, s),
        })
        .collect();
    ScaleSeries::new(base, entries)
}

fn occupied_cells(mask: &BinaryMask, box_size: usize) -> u64 {
    let rows = mask.height().div_ceil(box_size);
    let cols = mask.width().div_ceil(box_size);
    let mut count = 0u64;
    for cell_r in 0..rows {
        for cell_c in 0..cols {
            let r0 = cell_r * box_size;
            let c0 = cell_c * box_size;
            let r1 = (r0 + box_size).min(mask.height());
            let c1 = (c0 + box_size).min(mask.width());
            'cell: for r in r0..r1 {
                for c in c0..c1 {
                    if mask.get(r, c) {
                        count += 1;
                        break 'cell;
                    }
                }
            }
        }
    }
    count
}

/// Differential box counting over the intensity surface.
///
/// For box side `s` the intensity column height is `h = s * 256 /
/// base_extent`; each cell contributes `floor(max/h) - floor(min/h) + 1`
/// columns, where max/min range over the cell's pixels.
pub fn differential_box_count(image: &GrayImage) -> Result<ScaleSeries> {
    if image.min_extent() < MIN_COUNTING_EXTENT {
        return Err(Error::param(format!(
            "image {}x{} too small for box counting (need {} per side)",
            image.width(),
            image.height(),
            MIN_COUNTING_EXTENT
        )));
    }
    let base = image.max_extent();
    let entries = box_sizes_for(base)
        .into_iter()
        .map(|s| ScaleEntry {
            box_size: s,
            count: column_count(image, s, base),
        })
        .collect();
    ScaleSeries::new(base, entries)
}

fn column_count(image: &GrayImage, box_size: usize, base_extent: usize) -> u64 {
    let h = box_size as f64 * 256.0 / base_extent as f64;
    let rows = image.height().div_ceil(box_size);
    let cols = image.width().div_ceil(box_size);
    let mut total = 0u64;
    for cell_r in 0..rows {
        for cell_c in 0..cols {
            let r0 = cell_r * box_size;
            let c0 = cell_c * box_size;
            let r1 = (r0 + box_size).min(image.height());
            let c1 = (c0 + box_size).min(image.width());
            let mut lo = u8::MAX;
            let mut hi = u8::MIN;
            for r in r0..r1 {
                for c in c0..c1 {
                    let v = image.get(r, c);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
            let n = (hi as f64 / h).floor() - (lo as f64 / h).floor() + 1.0;
            total += n as u64;
        }
    }
    total
}

/// What the counts measure; fixes the plausible dimension range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FractalKind {
    /// Occupancy counting of a planar set: dimension in [0, 2].
    Binary,
    /// Differential counting of an intensity surface: dimension in [2, 3].
    Grayscale,
}

impl FractalKind {
    fn clamp_range(self) -> (f64, f64) {
        match self {
            FractalKind::Binary => (0.0, 2.0),
            FractalKind::Grayscale => (2.0, 3.0),
        }
    }
}

/// Fitted dimension with fit quality and, once derived, the Hurst
/// coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct FractalEstimate {
    pub kind: FractalKind,
    /// Fitted dimension after clamping to the kind's range.
    pub dimension: f64,
    /// Coefficient of determination of the log-log fit, in [0, 1].
    pub fit_r2: f64,
    /// Whether clamping moved the raw slope.
    pub clamped: bool,
    /// Hurst coefficient, set by [`hurst_coefficient`].
    pub hurst: Option<f64>,
    /// Topological dimension used for the Hurst derivation.
    pub topo_dim: Option<u8>,
    pub series: ScaleSeries,
}

/// Least-squares slope of log(count) versus log(1/ratio).
pub fn fit_dimension(series: &ScaleSeries, kind: FractalKind) -> Result<FractalEstimate> {
    if series.len() < 3 {
        return Err(Error::InsufficientScales {
            available: series.len(),
        });
    }
    let base = series.base_extent() as f64;
    let points: Vec<(f64, f64)> = series
        .entries()
        .iter()
        .map(|e| ((base / e.box_size as f64).ln(), (e.count as f64).ln()))
        .collect();

    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let var_x = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
    if var_x < 1e-12 {
        return Err(Error::DegenerateFit);
    }
    let cov = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum::<f64>();
    let slope = cov / var_x;
    let intercept = mean_y - slope * mean_x;

    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let fit_r2 = if ss_tot < 1e-12 {
        // Flat series: a horizontal line explains it perfectly.
        if ss_res < 1e-12 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };

    let (lo, hi) = kind.clamp_range();
    let dimension = slope.clamp(lo, hi);
    Ok(FractalEstimate {
        kind,
        dimension,
        fit_r2,
        clamped: dimension != slope,
        hurst: None,
        topo_dim: None,
        series: series.clone(),
    })
}

/// Derives the Hurst coefficient as `topo_dim - dimension`, clamped to
/// [[`HURST_MIN`], [`HURST_MAX`]]. `topo_dim` is 3 for intensity surfaces
/// and 2 for planar sets.
pub fn hurst_coefficient(mut estimate: FractalEstimate, topo_dim: u8) -> Result<FractalEstimate> {
    if !(topo_dim == 2 || topo_dim == 3) {
        return Err(Error::param(format!(
            "topological dimension {topo_dim} must be 2 or 3"
        )));
    }
    let raw = topo_dim as f64 - estimate.dimension;
    estimate.hurst = Some(raw.clamp(HURST_MIN, HURST_MAX));
    estimate.topo_dim = Some(topo_dim);
    Ok(estimate)
}
