//! On-disk result format: a directory of PGM masks plus JSON reports with
//! stable key order, so identical runs produce byte-identical output.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::morphology::Cluster;
use crate::pgm::write_pgm_file;
use crate::pipeline::{
    ComparisonReport, DetectionResult, MethodCounts, PipelineConfig, StageCount, ThresholdMode,
};
use crate::synth::PhantomTruth;

#[derive(Serialize)]
struct DetectionJson<'a> {
    dimension: f64,
    hurst: f64,
    fit_r2: f64,
    threshold_mode: ThresholdMode,
    effective_threshold: f64,
    clusters: &'a [Cluster],
    stage_trace: &'a [StageCount],
    config: &'a PipelineConfig,
}

#[derive(Serialize)]
struct ComparisonJson {
    xor_pixel_count: usize,
    edge_pixel_counts: MethodCounts,
    cluster_counts: MethodCounts,
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// `report.json` contents for a detection run.
pub fn detection_json(result: &DetectionResult) -> String {
    to_json_line(&DetectionJson {
        dimension: result.estimate.dimension,
        hurst: result.hurst(),
        fit_r2: result.estimate.fit_r2,
        threshold_mode: result.config_used.threshold_mode,
        effective_threshold: result.threshold.effective,
        clusters: result.clusters.clusters(),
        stage_trace: &result.stage_trace,
        config: &result.config_used,
    })
}

/// `comparison.json` contents for a side-by-side run.
pub fn comparison_json(report: &ComparisonReport) -> String {
    to_json_line(&ComparisonJson {
        xor_pixel_count: report.xor_pixel_count,
        edge_pixel_counts: report.edge_pixel_counts,
        cluster_counts: report.cluster_counts,
    })
}

/// Ground-truth JSON for a generated phantom.
pub fn phantom_truth_json(truth: &PhantomTruth) -> String {
    to_json_line(truth)
}

/// Writes `edges.pgm`, `segmented.pgm`, `outline.pgm`, `overlay.pgm`, and
/// `report.json` into `dir`, creating it if needed.
pub fn write_detection_dir(result: &DetectionResult, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_pgm_file(&dir.join("edges.pgm"), &result.edge_mask.to_gray())?;
    write_pgm_file(&dir.join("segmented.pgm"), &result.segmented_mask.to_gray())?;
    write_pgm_file(&dir.join("outline.pgm"), &result.outline_mask.to_gray())?;
    write_pgm_file(&dir.join("overlay.pgm"), &result.overlay)?;
    fs::write(dir.join("report.json"), detection_json(result))?;
    Ok(())
}

/// Writes `comparison.json` plus the two embedded detection directories
/// (`hurst/`, `fudge/`) under `dir`.
pub fn write_comparison_dir(report: &ComparisonReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("comparison.json"), comparison_json(report))?;
    write_detection_dir(&report.hurst_result, &dir.join("hurst"))?;
    write_detection_dir(&report.fudge_result, &dir.join("fudge"))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{compare_thresholds, detect_clusters};
    use crate::raster::BinaryMask;
    use crate::synth::phantom;

    #[test]
    fn detection_json_has_the_expected_keys_in_order() {
        let (img, _) = phantom(2, 128, 3).unwrap();
        let result = detect_clusters(&img, &Default::default()).unwrap();
        let json = detection_json(&result);
        let positions: Vec<usize> = [
            "\"dimension\"",
            "\"hurst\"",
            "\"fit_r2\"",
            "\"threshold_mode\"",
            "\"effective_threshold\"",
            "\"clusters\"",
            "\"stage_trace\"",
            "\"config\"",
        ]
        .iter()
        .map(|k| json.find(k).unwrap_or_else(|| panic!("missing key {k}")))
        .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(json.ends_with('\n'));

        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["threshold_mode"], "hurst");
        assert_eq!(parsed["config"]["connectivity"], 8);
        assert_eq!(parsed["stage_trace"][0]["stage"], "edges");
    }

    #[test]
    fn directories_round_trip_masks() {
        let (img, _) = phantom(3, 128, 6).unwrap();
        let report = compare_thresholds(&img, &Default::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_comparison_dir(&report, dir.path()).unwrap();

        let hurst_edges =
            crate::pgm::read_pgm_file(&dir.path().join("hurst").join("edges.pgm")).unwrap();
        let fudge_edges =
            crate::pgm::read_pgm_file(&dir.path().join("fudge").join("edges.pgm")).unwrap();
        let recount =
            BinaryMask::from_gray(&hurst_edges).xor_count(&BinaryMask::from_gray(&fudge_edges));
        assert_eq!(recount, report.xor_pixel_count);

        let comparison: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join("comparison.json")).unwrap(),
        )
        .unwrap();
        assert_eq!(
            comparison["xor_pixel_count"].as_u64().unwrap() as usize,
            report.xor_pixel_count
        );
    }

    #[test]
    fn identical_runs_serialize_identically() {
        let (img, _) = phantom(2, 128, 12).unwrap();
        let a = detect_clusters(&img, &Default::default()).unwrap();
        let b = detect_clusters(&img, &Default::default()).unwrap();
        assert_eq!(detection_json(&a), detection_json(&b));
    }
}
