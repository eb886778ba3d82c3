//! End-to-end detection: estimate the intensity surface's fractal
//! dimension, derive the Hurst coefficient, use it (or the fixed fudge
//! factor) as the Sobel threshold factor, then segment and label the
//! resulting edge map.
//!
//! Stage order for [`detect_clusters`]:
//! 1. differential box count + dimension fit on the raw input;
//! 2. grayscale closing (dilate then erode) with `pre_se`;
//! 3. Hurst coefficient from the fitted dimension;
//! 4. Sobel gradients of the closed image, binarized at
//!    `sobel_scale * mean magnitude * factor`;
//! 5. binary dilation with `post_se`;
//! 6. hole filling;
//! 7. erosion smoothing with `smooth_se`;
//! 8. outlining with `outline_se` and connected-component labeling.
//!
//! Everything is a pure function of (image, config); reruns are
//! bitwise identical.

use serde::Serialize;

use crate::edges::{apply_threshold, auto_threshold_scaled, sobel_gradients, EdgeThreshold};
use crate::error::{Error, Result};
use crate::fractal::{
    differential_box_count, fit_dimension, hurst_coefficient, FractalEstimate, FractalKind,
};
use crate::morphology::{
    close_gray, connected_components, dilate_binary, erode_binary, fill_holes, outline,
    ClusterReport, Connectivity, StructuringElement,
};
use crate::raster::{BinaryMask, GrayImage};

/// Which factor scales the automatic Sobel cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    /// Image-dependent factor: the derived Hurst coefficient.
    Hurst,
    /// Fixed fudge factor (0.5 by default).
    Fudge,
}

/// Structuring-element selection exposed in configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeChoice {
    Square3,
    Diamond1,
}

impl SeChoice {
    pub fn build(self) -> StructuringElement {
        match self {
            SeChoice::Square3 => StructuringElement::square(3).expect("valid fixed element"),
            SeChoice::Diamond1 => StructuringElement::diamond(1).expect("valid fixed element"),
        }
    }
}

/// Tunable knobs of the detection pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub threshold_mode: ThresholdMode,
    /// Baseline threshold factor, in (0, 1].
    pub fudge_factor: f64,
    /// Topological dimension for the Hurst derivation (3 for surfaces).
    pub topo_dim: u8,
    /// Multiplier on the mean gradient magnitude forming the base cutoff.
    pub sobel_scale: f64,
    /// Grayscale closing element (preprocessing).
    pub pre_se: SeChoice,
    /// Post-edge binary dilation element.
    pub post_se: SeChoice,
    /// Smoothing erosion element.
    pub smooth_se: SeChoice,
    /// Outlining element.
    pub outline_se: SeChoice,
    /// Regions smaller than this many pixels are dropped from the report.
    pub min_cluster_area: usize,
    pub connectivity: Connectivity,
    /// Estimate the dimension on the closed image instead of the raw
    /// input. Off by default: the dimension is taken before
    /// preprocessing.
    pub hurst_after_closing: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            threshold_mode: ThresholdMode::Hurst,
            fudge_factor: 0.5,
            topo_dim: 3,
            sobel_scale: crate::edges::DEFAULT_SOBEL_SCALE,
            pre_se: SeChoice::Square3,
            post_se: SeChoice::Diamond1,
            smooth_se: SeChoice::Diamond1,
            outline_se: SeChoice::Diamond1,
            min_cluster_area: 4,
            connectivity: Connectivity::Eight,
            hurst_after_closing: false,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.fudge_factor > 0.0 && self.fudge_factor <= 1.0) {
            return Err(Error::param(format!(
                "fudge factor {} outside (0, 1]",
                self.fudge_factor
            )));
        }
        if self.min_cluster_area < 1 {
            return Err(Error::param("minimum cluster area must be at least 1"));
        }
        if !(self.topo_dim == 2 || self.topo_dim == 3) {
            return Err(Error::param(format!(
                "topological dimension {} must be 2 or 3",
                self.topo_dim
            )));
        }
        if self.sobel_scale <= 0.0 || !self.sobel_scale.is_finite() {
            return Err(Error::param("sobel scale must be positive"));
        }
        Ok(())
    }
}

/// One entry of the per-stage audit trail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageCount {
    pub stage: &'static str,
    pub foreground: usize,
}

/// Everything a detection run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    pub estimate: FractalEstimate,
    pub threshold: EdgeThreshold,
    /// Binarized Sobel response.
    pub edge_mask: BinaryMask,
    /// Hole-filled segmentation (superset of the dilated edge map).
    pub segmented_mask: BinaryMask,
    /// Interior boundaries of the smoothed segmentation.
    pub outline_mask: BinaryMask,
    pub clusters: ClusterReport,
    /// Input image with the outline burned in at intensity 255.
    pub overlay: GrayImage,
    pub config_used: PipelineConfig,
    pub stage_trace: Vec<StageCount>,
}

impl DetectionResult {
    /// Hurst coefficient used (or that would be used) as threshold factor.
    pub fn hurst(&self) -> f64 {
        self.estimate.hurst.expect("pipeline always derives hurst")
    }
}

/// Side-by-side run of the Hurst-factor and fudge-factor pipelines.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub hurst_result: DetectionResult,
    pub fudge_result: DetectionResult,
    /// Pixels where the two edge masks disagree.
    pub xor_pixel_count: usize,
    pub edge_pixel_counts: MethodCounts,
    pub cluster_counts: MethodCounts,
}

/// A per-method pair of counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MethodCounts {
    pub hurst: usize,
    pub fudge: usize,
}

/// Runs the full detection pipeline.
pub fn detect_clusters(image: &GrayImage, config: &PipelineConfig) -> Result<DetectionResult> {
    config.validate()?;
    if image.width() < 8 || image.height() < 8 {
        return Err(Error::param(format!(
            "image {}x{} below the 8x8 pipeline minimum",
            image.width(),
            image.height()
        )));
    }

    let pre_se = config.pre_se.build();
    let closed = close_gray(image, &pre_se);

    let dimension_input = if config.hurst_after_closing {
        &closed
    } else {
        image
    };
    let series = differential_box_count(dimension_input)?;
    let estimate = fit_dimension(&series, FractalKind::Grayscale)?;
    let estimate = hurst_coefficient(estimate, config.topo_dim)?;

    let field = sobel_gradients(&closed)?;
    let factor = match config.threshold_mode {
        ThresholdMode::Hurst => estimate.hurst.expect("hurst set above"),
        ThresholdMode::Fudge => config.fudge_factor,
    };
    let threshold = auto_threshold_scaled(&field, config.sobel_scale).with_factor(factor)?;
    let edge_mask = apply_threshold(&field, threshold.effective);

    let dilated = dilate_binary(&edge_mask, &config.post_se.build());
    let segmented_mask = fill_holes(&dilated);
    let smoothed = erode_binary(&segmented_mask, &config.smooth_se.build());
    let outline_mask = outline(&smoothed, &config.outline_se.build());
    let clusters = connected_components(&smoothed, config.connectivity, config.min_cluster_area);

    let mut overlay = image.clone();
    for r in 0..image.height() {
        for c in 0..image.width() {
            if outline_mask.get(r, c) {
                overlay.set(r, c, 255);
            }
        }
    }

    let stage_trace = vec![
        StageCount {
            stage: "edges",
            foreground: edge_mask.count_foreground(),
        },
        StageCount {
            stage: "dilate",
            foreground: dilated.count_foreground(),
        },
        StageCount {
            stage: "fill",
            foreground: segmented_mask.count_foreground(),
        },
        StageCount {
            stage: "erode",
            foreground: smoothed.count_foreground(),
        },
        StageCount {
            stage: "outline",
            foreground: outline_mask.count_foreground(),
        },
    ];

    Ok(DetectionResult {
        estimate,
        threshold,
        edge_mask,
        segmented_mask,
        outline_mask,
        clusters,
        overlay,
        config_used: *config,
        stage_trace,
    })
}

/// Runs [`detect_clusters`] in Hurst mode and fudge mode with otherwise
/// identical configuration and tallies the differences.
pub fn compare_thresholds(image: &GrayImage, config: &PipelineConfig) -> Result<ComparisonReport> {
    let hurst_config = PipelineConfig {
        threshold_mode: ThresholdMode::Hurst,
        ..*config
    };
    let fudge_config = PipelineConfig {
        threshold_mode: ThresholdMode::Fudge,
        ..*config
    };
    let hurst_result = detect_clusters(image, &hurst_config)?;
    let fudge_result = detect_clusters(image, &fudge_config)?;
    let xor_pixel_count = hurst_result.edge_mask.xor_count(&fudge_result.edge_mask);
    let edge_pixel_counts = MethodCounts {
        hurst: hurst_result.edge_mask.count_foreground(),
        fudge: fudge_result.edge_mask.count_foreground(),
    };
    let cluster_counts = MethodCounts {
        hurst: hurst_result.clusters.len(),
        fudge: fudge_result.clusters.len(),
    };
    Ok(ComparisonReport {
        hurst_result,
        fudge_result,
        xor_pixel_count,
        edge_pixel_counts,
        cluster_counts,
    })
}
