//! Detection of bright microcalcification-like clusters in grayscale
//! mammogram images.
//!
//! The pipeline estimates the image's fractal dimension by differential
//! box counting, derives a Hurst coefficient from it, and uses that
//! image-dependent value as the Sobel edge-threshold factor in place of
//! the conventional fixed fudge factor (0.5). Morphological
//! post-processing (dilation, hole filling, erosion smoothing, outlining)
//! turns the edge map into labeled clusters, and a comparison mode runs
//! both threshold factors side by side.
//!
//! Entry points: [`pipeline::detect_clusters`] and
//! [`pipeline::compare_thresholds`]. Synthetic fixtures with known
//! properties live in [`synth`]; PGM I/O in [`pgm`].

pub mod edges;
pub mod error;
pub mod fractal;
pub mod morphology;
pub mod pgm;
pub mod pipeline;
pub mod raster;
pub mod report;
pub mod synth;

pub use error::{Error, Result};
pub use raster::{BinaryMask, GrayImage};
