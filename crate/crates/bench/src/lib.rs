//! Shared fixtures for the benchmark suite.

use microcalc_core::raster::{BinaryMask, GrayImage};
use microcalc_core::synth::{fbm_surface, phantom, sierpinski_carpet};

/// Order-5 Sierpinski carpet (243 x 243).
pub fn carpet_order5() -> BinaryMask {
    sierpinski_carpet(5).expect("order in range")
}

/// Mid-roughness Brownian surface (257 x 257).
pub fn fbm_257() -> GrayImage {
    fbm_surface(0.5, 257, 42).expect("valid parameters")
}

/// Five-blob phantom (256 x 256).
pub fn phantom_256() -> GrayImage {
    phantom(5, 256, 7).expect("valid parameters").0
}
