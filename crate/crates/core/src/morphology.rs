//! Binary and grayscale morphology with explicit structuring elements,
//! plus hole filling, outlining, and connected-component labeling.
//!
//! Conventions, applied consistently so the usual set algebra (duality,
//! extensivity, idempotence of opening/closing) holds:
//! - binary dilation ignores structuring-element cells that fall outside
//!   the image (outside is background, so it cannot hit);
//! - binary erosion treats out-of-bounds cells as misses
//!   (border-conservative);
//! - grayscale dilation/erosion replicate the border pixel.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, GrayImage};

/// Small boolean probe with its origin at the center cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    side: usize,
    pattern: Vec<bool>,
    offsets: Vec<(isize, isize)>,
}

impl StructuringElement {
    /// Builds from a row-major pattern. The side must be odd and at most
    /// 9, the origin (center) cell must be set, and at least one cell must
    /// be set.
    pub fn new(side: usize, pattern: Vec<bool>) -> Result<Self> {
        if side % 2 == 0 || side == 0 || side > 9 {
            return Err(Error::param(format!(
                "structuring element side {side} must be odd and at most 9"
            )));
        }
        if pattern.len() != side * side {
            return Err(Error::param("structuring element pattern length mismatch"));
        }
        let center = side / 2;
        if !pattern[center * side + center] {
            return Err(Error::param("structuring element origin must be set"));
        }
        let offsets: Vec<(isize, isize)> = pattern
            .iter()
            .enumerate()
            .filter(|&(_, &set)| set)
            .map(|(i, _)| {
                (
                    (i / side) as isize - center as isize,
                    (i % side) as isize - center as isize,
                )
            })
            .collect();
        Ok(StructuringElement {
            side,
            pattern,
            offsets,
        })
    }

    /// Solid square of the given odd side.
    pub fn square(side: usize) -> Result<Self> {
        Self::new(side, vec![true; side * side])
    }

    /// Diamond (L1 ball) of the given radius; radius 1 is the 5-cell plus.
    pub fn diamond(radius: usize) -> Result<Self> {
        let side = 2 * radius + 1;
        if side > 9 {
            return Err(Error::param(format!("diamond radius {radius} too large")));
        }
        let r = radius as isize;
        let mut pattern = Vec::with_capacity(side * side);
        for dr in -r..=r {
            for dc in -r..=r {
                pattern.push(dr.abs() + dc.abs() <= r);
            }
        }
        Self::new(side, pattern)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Half-side; how far the probe reaches from its origin.
    pub fn radius(&self) -> usize {
        self.side / 2
    }

    /// (row, col) offsets of the set cells relative to the origin.
    pub fn offsets(&self) -> &[(isize, isize)] {
        &self.offsets
    }

    /// 180-degree rotation about the origin.
    pub fn reflect(&self) -> StructuringElement {
        let mut pattern = self.pattern.clone();
        pattern.reverse();
        StructuringElement::new(self.side, pattern).expect("reflection preserves validity")
    }
}

/// Direction of a grayscale rank filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphMode {
    Dilate,
    Erode,
}

/// Binary dilation: a pixel is set when the reflected element placed
/// there hits at least one foreground pixel.
pub fn dilate_binary(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    BinaryMask::from_fn(mask.width(), mask.height(), |r, c| {
        se.offsets()
            .iter()
            .any(|&(dr, dc)| mask.get_or_background(r as isize - dr, c as isize - dc))
    })
}

/// Binary erosion: a pixel survives when every element cell placed there
/// lands on in-bounds foreground.
pub fn erode_binary(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    let h = mask.height() as isize;
    let w = mask.width() as isize;
    BinaryMask::from_fn(mask.width(), mask.height(), |r, c| {
        se.offsets().iter().all(|&(dr, dc)| {
            let rr = r as isize + dr;
            let cc = c as isize + dc;
            rr >= 0 && cc >= 0 && rr < h && cc < w && mask.get(rr as usize, cc as usize)
        })
    })
}

/// Grayscale dilation (neighborhood maximum) or erosion (minimum) over
/// the element's support, replicating the border.
pub fn morph_gray(image: &GrayImage, se: &StructuringElement, mode: MorphMode) -> GrayImage {
    GrayImage::from_fn(image.width(), image.height(), |r, c| {
        let mut acc: Option<u8> = None;
        for &(dr, dc) in se.offsets() {
            let v = match mode {
                MorphMode::Dilate => image.get_replicated(r as isize - dr, c as isize - dc),
                MorphMode::Erode => image.get_replicated(r as isize + dr, c as isize + dc),
            };
            acc = Some(match (acc, mode) {
                (None, _) => v,
                (Some(a), MorphMode::Dilate) => a.max(v),
                (Some(a), MorphMode::Erode) => a.min(v),
            });
        }
        acc.expect("structuring element has at least one cell")
    })
}

/// Grayscale closing: dilation then erosion with the same element.
pub fn close_gray(image: &GrayImage, se: &StructuringElement) -> GrayImage {
    morph_gray(
        &morph_gray(image, se, MorphMode::Dilate),
        se,
        MorphMode::Erode,
    )
}

/// Binary closing (dilation then erosion) computed in a padded frame so
/// dilated pixels near the border are not cropped before the erosion.
/// This keeps closing extensive and idempotent all the way to the edge,
/// which the raw composite is not: a foreground corner pixel would lose
/// its out-of-frame dilation and then fail the conservative erosion.
pub fn close_binary(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    let pad = se.radius();
    let padded = mask.padded(pad);
    let closed = erode_binary(&dilate_binary(&padded, se), se);
    closed.cropped(pad, pad, mask.width(), mask.height())
}

/// Binary opening (erosion then dilation) in a padded frame; see
/// [`close_binary`]. Opening never grows past the input's support, so the
/// padding only normalizes border behavior.
pub fn open_binary(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    let pad = se.radius();
    let padded = mask.padded(pad);
    let opened = dilate_binary(&erode_binary(&padded, se), se);
    opened.cropped(pad, pad, mask.width(), mask.height())
}

/// Turns background regions that are not 4-connected to the border into
/// foreground. Border-connected background is left alone; idempotent.
pub fn fill_holes(mask: &BinaryMask) -> BinaryMask {
    let w = mask.width();
    let h = mask.height();
    let mut reachable = vec![false; w * h];
    let mut stack: Vec<(usize, usize)> = Vec::new();

    let seed = |r: usize, c: usize, stack: &mut Vec<(usize, usize)>, seen: &mut Vec<bool>| {
        if !mask.get(r, c) && !seen[r * w + c] {
            seen[r * w + c] = true;
            stack.push((r, c));
        }
    };
    for c in 0..w {
        seed(0, c, &mut stack, &mut reachable);
        seed(h - 1, c, &mut stack, &mut reachable);
    }
    for r in 0..h {
        seed(r, 0, &mut stack, &mut reachable);
        seed(r, w - 1, &mut stack, &mut reachable);
    }

    while let Some((r, c)) = stack.pop() {
        let mut visit = |rr: usize, cc: usize| {
            if !mask.get(rr, cc) && !reachable[rr * w + cc] {
                reachable[rr * w + cc] = true;
                stack.push((rr, cc));
            }
        };
        if r > 0 {
            visit(r - 1, c);
        }
        if r + 1 < h {
            visit(r + 1, c);
        }
        if c > 0 {
            visit(r, c - 1);
        }
        if c + 1 < w {
            visit(r, c + 1);
        }
    }

    BinaryMask::from_fn(w, h, |r, c| mask.get(r, c) || !reachable[r * w + c])
}

/// Interior boundary: the mask minus its erosion.
pub fn outline(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    let eroded = erode_binary(mask, se);
    BinaryMask::from_fn(mask.width(), mask.height(), |r, c| {
        mask.get(r, c) && !eroded.get(r, c)
    })
}

/// Pixel adjacency for component labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Serialize for Connectivity {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(match self {
            Connectivity::Four => 4,
            Connectivity::Eight => 8,
        })
    }
}

impl Connectivity {
    fn neighbors(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
            Connectivity::Eight => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
        }
    }
}

/// Inclusive pixel bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundingBox {
    pub top: usize,
    pub left: usize,
    pub bottom: usize,
    pub right: usize,
}

/// One labeled region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    /// Label in the grid; ids run 1..=k by descending area.
    pub id: u32,
    /// Pixel count.
    pub area: usize,
    /// Mean (row, col) of the region's pixels.
    pub centroid: (f64, f64),
    pub bbox: BoundingBox,
}

/// Labeled regions plus the label grid they came from (0 = background).
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    clusters: Vec<Cluster>,
}

impl ClusterReport {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn label(&self, row: usize, col: usize) -> u32 {
        self.labels[row * self.width + col]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Renders labels spread over the gray range for inspection.
    pub fn labels_image(&self) -> GrayImage {
        let k = self.clusters.len() as u32;
        GrayImage::from_fn(self.width, self.height, |r, c| {
            let label = self.label(r, c);
            if label == 0 || k == 0 {
                0
            } else {
                (label * 255 / k) as u8
            }
        })
    }
}

/// Labels maximal connected foreground regions, drops those smaller than
/// `min_area` (zeroing them in the grid), and orders the survivors by
/// descending area, ties broken by bounding-box (top, left).
pub fn connected_components(
    mask: &BinaryMask,
    connectivity: Connectivity,
    min_area: usize,
) -> ClusterReport {
    let w = mask.width();
    let h = mask.height();
    let mut visited = vec![false; w * h];
    let mut regions: Vec<(Vec<(usize, usize)>, BoundingBox)> = Vec::new();

    for start_r in 0..h {
        for start_c in 0..w {
            if !mask.get(start_r, start_c) || visited[start_r * w + start_c] {
                continue;
            }
            let mut pixels = Vec::new();
            let mut bbox = BoundingBox {
                top: start_r,
                left: start_c,
                bottom: start_r,
                right: start_c,
            };
            let mut stack = vec![(start_r, start_c)];
            visited[start_r * w + start_c] = true;
            while let Some((r, c)) = stack.pop() {
                pixels.push((r, c));
                bbox.top = bbox.top.min(r);
                bbox.bottom = bbox.bottom.max(r);
                bbox.left = bbox.left.min(c);
                bbox.right = bbox.right.max(c);
                for &(dr, dc) in connectivity.neighbors() {
                    let rr = r as isize + dr;
                    let cc = c as isize + dc;
                    if rr < 0 || cc < 0 || rr >= h as isize || cc >= w as isize {
                        continue;
                    }
                    let (rr, cc) = (rr as usize, cc as usize);
                    if mask.get(rr, cc) && !visited[rr * w + cc] {
                        visited[rr * w + cc] = true;
                        stack.push((rr, cc));
                    }
                }
            }
            if pixels.len() >= min_area.max(1) {
                regions.push((pixels, bbox));
            }
        }
    }

    regions.sort_by(|a, b| {
        b.0.len()
            .cmp(&a.0.len())
            .then(a.1.top.cmp(&b.1.top))
            .then(a.1.left.cmp(&b.1.left))
    });

    let mut labels = vec![0u32; w * h];
    let mut clusters = Vec::with_capacity(regions.len());
    for (index, (pixels, bbox)) in regions.iter().enumerate() {
        let id = index as u32 + 1;
        let mut sum_r = 0.0;
        let mut sum_c = 0.0;
        for &(r, c) in pixels {
            labels[r * w + c] = id;
            sum_r += r as f64;
            sum_c += c as f64;
        }
        let n = pixels.len() as f64;
        clusters.push(Cluster {
            id,
            area: pixels.len(),
            centroid: (sum_r / n, sum_c / n),
            bbox: *bbox,
        });
    }

    ClusterReport {
        width: w,
        height: h,
        labels,
        clusters,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::SplitMix64;

    fn random_mask(size: usize, seed: u64, density: f64) -> BinaryMask {
        let mut rng = SplitMix64::new(seed);
        BinaryMask::from_fn(size, size, |_, _| rng.next_f64() < density)
    }

    fn default_ses() -> Vec<StructuringElement> {
        vec![
            StructuringElement::square(3).unwrap(),
            StructuringElement::diamond(1).unwrap(),
        ]
    }

    /// Infinite-plane duality check: pad with background so the
    /// complement's frame is foreground, then compare in the original
    /// window.
    fn dual_erode(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
        let pad = se.radius();
        let padded = mask.padded(pad);
        let dilated = dilate_binary(&padded.complement(), &se.reflect());
        dilated
            .complement()
            .cropped(pad, pad, mask.width(), mask.height())
    }

    fn dual_dilate(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
        let pad = se.radius();
        let padded = mask.padded(pad);
        let eroded = erode_binary(&padded.complement(), &se.reflect());
        eroded
            .complement()
            .cropped(pad, pad, mask.width(), mask.height())
    }

    #[test]
    fn se_constructors_validate() {
        assert!(StructuringElement::square(4).is_err());
        assert!(StructuringElement::square(11).is_err());
        assert!(StructuringElement::diamond(5).is_err());
        assert!(StructuringElement::new(3, vec![true; 4]).is_err());
        let mut no_origin = vec![true; 9];
        no_origin[4] = false;
        assert!(StructuringElement::new(3, no_origin).is_err());
        assert_eq!(StructuringElement::diamond(1).unwrap().offsets().len(), 5);
        assert_eq!(StructuringElement::square(3).unwrap().offsets().len(), 9);
    }

    #[test]
    fn dilating_a_point_stamps_the_element() {
        let mut m = BinaryMask::empty(5, 5);
        m.set(2, 2, true);
        let d = dilate_binary(&m, &StructuringElement::square(3).unwrap());
        assert_eq!(d.count_foreground(), 9);
        for r in 1..4 {
            for c in 1..4 {
                assert!(d.get(r, c));
            }
        }
    }

    #[test]
    fn dilating_empty_stays_empty() {
        let m = BinaryMask::empty(8, 8);
        for se in default_ses() {
            assert!(dilate_binary(&m, &se).is_empty_mask());
        }
    }

    #[test]
    fn eroding_a_solid_block_leaves_the_center() {
        let m = BinaryMask::from_fn(3, 3, |_, _| true);
        let e = erode_binary(&m, &StructuringElement::square(3).unwrap());
        assert_eq!(e.count_foreground(), 1);
        assert!(e.get(1, 1));
    }

    #[test]
    fn erosion_clears_the_border_of_a_full_mask() {
        let m = BinaryMask::from_fn(6, 6, |_, _| true);
        let e = erode_binary(&m, &StructuringElement::square(3).unwrap());
        for r in 0..6 {
            for c in 0..6 {
                let interior = (1..5).contains(&r) && (1..5).contains(&c);
                assert_eq!(e.get(r, c), interior);
            }
        }
    }

    #[test]
    fn duality_holds_both_ways_on_random_masks() {
        for seed in 0..20 {
            let m = random_mask(16, seed, 0.35);
            for se in default_ses() {
                assert_eq!(erode_binary(&m, &se), dual_erode(&m, &se), "seed {seed}");
                assert_eq!(dilate_binary(&m, &se), dual_dilate(&m, &se), "seed {seed}");
            }
        }
    }

    #[test]
    fn closing_is_extensive_and_opening_anti_extensive() {
        for seed in 0..20 {
            let m = random_mask(16, seed, 0.4);
            for se in default_ses() {
                assert!(m.is_subset_of(&close_binary(&m, &se)));
                assert!(open_binary(&m, &se).is_subset_of(&m));
            }
        }
    }

    #[test]
    fn raw_composite_closing_is_extensive_away_from_borders() {
        // Without padding the composite only honors extensivity where the
        // dilation is not cropped by the frame.
        for seed in 0..10 {
            let inner = random_mask(12, seed, 0.4);
            let m = BinaryMask::from_fn(16, 16, |r, c| {
                (2..14).contains(&r) && (2..14).contains(&c) && inner.get(r - 2, c - 2)
            });
            for se in default_ses() {
                let closing = erode_binary(&dilate_binary(&m, &se), &se);
                assert!(m.is_subset_of(&closing), "seed {seed}");
            }
        }
    }

    #[test]
    fn dilation_and_erosion_are_monotone() {
        for seed in 0..10 {
            let small = random_mask(16, seed, 0.3);
            let extra = random_mask(16, seed ^ 0xFF, 0.2);
            let large = BinaryMask::from_fn(16, 16, |r, c| small.get(r, c) || extra.get(r, c));
            for se in default_ses() {
                assert!(dilate_binary(&small, &se).is_subset_of(&dilate_binary(&large, &se)));
                assert!(erode_binary(&small, &se).is_subset_of(&erode_binary(&large, &se)));
            }
        }
    }

    #[test]
    fn opening_and_closing_are_idempotent() {
        for seed in 0..10 {
            let m = random_mask(16, seed, 0.45);
            for se in default_ses() {
                let o = open_binary(&m, &se);
                assert_eq!(open_binary(&o, &se), o);
                let c = close_binary(&m, &se);
                assert_eq!(close_binary(&c, &se), c);
            }
        }
    }

    #[test]
    fn gray_constant_is_fixed_point() {
        let img = GrayImage::filled(8, 8, 99).unwrap();
        for se in default_ses() {
            assert_eq!(morph_gray(&img, &se, MorphMode::Dilate), img);
            assert_eq!(morph_gray(&img, &se, MorphMode::Erode), img);
        }
    }

    #[test]
    fn gray_dilate_spreads_a_peak() {
        let mut img = GrayImage::filled(5, 5, 0).unwrap();
        img.set(2, 2, 255);
        let d = morph_gray(
            &img,
            &StructuringElement::square(3).unwrap(),
            MorphMode::Dilate,
        );
        for r in 0..5 {
            for c in 0..5 {
                let in_block = (1..4).contains(&r) && (1..4).contains(&c);
                assert_eq!(d.get(r, c), if in_block { 255 } else { 0 });
            }
        }
    }

    #[test]
    fn gray_duality_with_symmetric_element() {
        let mut rng = SplitMix64::new(17);
        let img = GrayImage::from_fn(8, 8, |_, _| (rng.next_u64() >> 56) as u8);
        let inverted = GrayImage::from_fn(8, 8, |r, c| 255 - img.get(r, c));
        let se = StructuringElement::square(3).unwrap();
        let d = morph_gray(&img, &se, MorphMode::Dilate);
        let e = morph_gray(&inverted, &se, MorphMode::Erode);
        for r in 0..8 {
            for c in 0..8 {
                assert_eq!(d.get(r, c) as u16 + e.get(r, c) as u16, 255);
            }
        }
    }

    #[test]
    fn gray_and_binary_dilation_commute_with_thresholding() {
        let mut rng = SplitMix64::new(23);
        let img = GrayImage::from_fn(10, 10, |_, _| (rng.next_u64() >> 56) as u8);
        let t = 128u8;
        for se in default_ses() {
            let binarize = |g: &GrayImage| BinaryMask::from_fn(10, 10, |r, c| g.get(r, c) > t);
            let a = dilate_binary(&binarize(&img), &se);
            let b = binarize(&morph_gray(&img, &se, MorphMode::Dilate));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn fill_holes_closes_a_ring() {
        let ring = BinaryMask::from_fn(7, 7, |r, c| {
            let on_ring = (1..6).contains(&r) && (1..6).contains(&c);
            let interior = (2..5).contains(&r) && (2..5).contains(&c);
            on_ring && !interior
        });
        let filled = fill_holes(&ring);
        for r in 1..6 {
            for c in 1..6 {
                assert!(filled.get(r, c));
            }
        }
        assert_eq!(filled.count_foreground(), 25);
        assert_eq!(fill_holes(&filled), filled);
    }

    #[test]
    fn fill_holes_leaves_solid_and_open_shapes_alone() {
        let block = BinaryMask::from_fn(8, 8, |r, c| (2..6).contains(&r) && (2..6).contains(&c));
        assert_eq!(fill_holes(&block), block);

        // "C" open to the top border: cavity is border-connected.
        let c_shape = BinaryMask::from_fn(8, 8, |r, c| {
            let outer = (1..7).contains(&r) && (1..7).contains(&c);
            let cavity = (0..5).contains(&r) && (3..5).contains(&c);
            outer && !cavity
        });
        assert_eq!(fill_holes(&c_shape), c_shape);
    }

    #[test]
    fn outline_of_a_block_is_its_perimeter() {
        let block = BinaryMask::from_fn(9, 9, |r, c| (2..7).contains(&r) && (2..7).contains(&c));
        let ring = outline(&block, &StructuringElement::diamond(1).unwrap());
        assert_eq!(ring.count_foreground(), 16);
        assert!(ring.is_subset_of(&block));
    }

    #[test]
    fn outline_of_a_point_is_the_point() {
        let mut m = BinaryMask::empty(5, 5);
        m.set(2, 2, true);
        assert_eq!(outline(&m, &StructuringElement::diamond(1).unwrap()), m);
    }

    #[test]
    fn outline_is_disjoint_from_erosion() {
        for seed in 0..10 {
            let m = random_mask(16, seed, 0.5);
            for se in default_ses() {
                let o = outline(&m, &se);
                let e = erode_binary(&m, &se);
                assert!(o.is_subset_of(&m));
                for r in 0..16 {
                    for c in 0..16 {
                        assert!(!(o.get(r, c) && e.get(r, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn labels_two_separate_blocks() {
        let m = BinaryMask::from_fn(12, 12, |r, c| {
            ((1..4).contains(&r) && (1..4).contains(&c))
                || ((7..10).contains(&r) && (7..10).contains(&c))
        });
        let report = connected_components(&m, Connectivity::Eight, 1);
        assert_eq!(report.len(), 2);
        assert_eq!(report.clusters()[0].area, 9);
        assert_eq!(report.clusters()[1].area, 9);
        // Equal areas: tie broken by top-left corner.
        assert_eq!(report.clusters()[0].bbox.top, 1);
        assert_eq!(report.clusters()[1].bbox.top, 7);
        assert_eq!(report.clusters()[0].centroid, (2.0, 2.0));
    }

    #[test]
    fn empty_mask_has_no_clusters() {
        let report = connected_components(&BinaryMask::empty(8, 8), Connectivity::Eight, 1);
        assert!(report.is_empty());
        assert!(report.labels().iter().all(|&l| l == 0));
    }

    #[test]
    fn diagonal_pixels_split_under_four_connectivity() {
        let mut m = BinaryMask::empty(8, 8);
        m.set(3, 3, true);
        m.set(4, 4, true);
        assert_eq!(connected_components(&m, Connectivity::Eight, 1).len(), 1);
        assert_eq!(connected_components(&m, Connectivity::Four, 1).len(), 2);
    }

    #[test]
    fn min_area_drops_and_zeroes_small_regions() {
        let mut m = BinaryMask::empty(10, 10);
        m.set(0, 0, true); // speck
        for r in 5..8 {
            for c in 5..8 {
                m.set(r, c, true);
            }
        }
        let report = connected_components(&m, Connectivity::Eight, 4);
        assert_eq!(report.len(), 1);
        assert_eq!(report.label(0, 0), 0);
        assert_eq!(report.clusters()[0].area, 9);
    }

    #[test]
    fn label_export_spreads_ids_over_gray_range() {
        let m = BinaryMask::from_fn(12, 12, |r, c| {
            ((1..4).contains(&r) && (1..4).contains(&c))
                || ((7..10).contains(&r) && (7..10).contains(&c))
        });
        let report = connected_components(&m, Connectivity::Eight, 1);
        let rendered = report.labels_image();
        assert_eq!(rendered.get(0, 0), 0);
        assert_eq!(rendered.get(2, 2), 127); // label 1 of 2
        assert_eq!(rendered.get(8, 8), 255); // label 2 of 2
    }

    #[test]
    fn labels_partition_the_filtered_foreground() {
        for seed in 0..10 {
            let m = random_mask(16, seed, 0.4);
            let report = connected_components(&m, Connectivity::Eight, 2);
            let labeled: usize = report.labels().iter().filter(|&&l| l != 0).count();
            let total_area: usize = report.clusters().iter().map(|c| c.area).sum();
            assert_eq!(labeled, total_area);
            for (i, cl) in report.clusters().iter().enumerate() {
                assert_eq!(cl.id as usize, i + 1);
                assert!(cl.centroid.0 >= cl.bbox.top as f64);
                assert!(cl.centroid.0 <= cl.bbox.bottom as f64);
                assert!(cl.centroid.1 >= cl.bbox.left as f64);
                assert!(cl.centroid.1 <= cl.bbox.right as f64);
                if i > 0 {
                    assert!(report.clusters()[i - 1].area >= cl.area);
                }
            }
        }
    }
}
