//! `microcalc` - detect bright microcalcification-like clusters in PGM
//! mammogram images.
//!
//! Exit codes: 0 success, 1 input/format errors (unreadable or malformed
//! images), 2 parameter errors (including usage errors). Diagnostics go to
//! stderr; machine output goes to files or stdout.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use microcalc_core::error::{Error, Result};
use microcalc_core::fractal::{
    differential_box_count, fit_dimension, hurst_coefficient, FractalKind,
};
use microcalc_core::morphology::Connectivity;
use microcalc_core::pgm::{read_pgm_file, write_pgm_file};
use microcalc_core::pipeline::{
    compare_thresholds, detect_clusters, PipelineConfig, SeChoice, ThresholdMode,
};
use microcalc_core::report::{phantom_truth_json, write_comparison_dir, write_detection_dir};
use microcalc_core::synth::{fbm_surface, phantom, sierpinski_carpet};

#[derive(Parser)]
#[command(
    name = "microcalc",
    version,
    about = "Cluster detection for grayscale mammograms via fractal-dimension driven edge thresholds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect clusters in a PGM image and write a result directory.
    Detect(DetectArgs),
    /// Run Hurst and fudge thresholds side by side and write both result
    /// directories plus comparison.json.
    Compare(DetectArgs),
    /// Print dimension, Hurst coefficient, and fit quality for an image.
    Fractal(FractalArgs),
    /// Generate synthetic fixture images.
    #[command(subcommand)]
    Generate(GenerateCmd),
}

#[derive(Args)]
struct DetectArgs {
    /// Input image (PGM, P5 or P2).
    input: PathBuf,
    /// Output directory; replaced atomically on success.
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct FractalArgs {
    /// Input image (PGM, P5 or P2).
    input: PathBuf,
    /// Topological dimension for the Hurst derivation.
    #[arg(long = "topo-dim", default_value_t = 3)]
    topo_dim: u8,
    /// Also print the per-scale box counts as CSV.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ConfigArgs {
    /// Which factor scales the automatic Sobel cutoff.
    #[arg(long = "threshold-mode", value_enum, default_value_t = ThresholdModeArg::Hurst)]
    threshold_mode: ThresholdModeArg,
    /// Fixed threshold factor used in fudge mode, in (0, 1].
    #[arg(long = "fudge", default_value_t = 0.5)]
    fudge: f64,
    /// Topological dimension for the Hurst derivation.
    #[arg(long = "topo-dim", default_value_t = 3)]
    topo_dim: u8,
    /// Multiplier on the mean gradient magnitude forming the base cutoff.
    #[arg(long = "sobel-scale", default_value_t = 4.0)]
    sobel_scale: f64,
    /// Drop clusters smaller than this many pixels.
    #[arg(long = "min-area", default_value_t = 4)]
    min_area: usize,
    /// Foreground connectivity for labeling.
    #[arg(long, value_enum, default_value_t = ConnectivityArg::Eight)]
    connectivity: ConnectivityArg,
    /// Structuring element for grayscale closing.
    #[arg(long = "se-pre", value_enum, default_value_t = SeArg::Square3)]
    se_pre: SeArg,
    /// Structuring element for post-edge dilation.
    #[arg(long = "se-post", value_enum, default_value_t = SeArg::Diamond1)]
    se_post: SeArg,
    /// Structuring element for erosion smoothing.
    #[arg(long = "se-smooth", value_enum, default_value_t = SeArg::Diamond1)]
    se_smooth: SeArg,
    /// Structuring element for outlining.
    #[arg(long = "se-outline", value_enum, default_value_t = SeArg::Diamond1)]
    se_outline: SeArg,
    /// Estimate the dimension on the closed image instead of the raw input.
    #[arg(long = "hurst-after-closing")]
    hurst_after_closing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdModeArg {
    Hurst,
    Fudge,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeArg {
    Square3,
    Diamond1,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnectivityArg {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

impl ConfigArgs {
    fn to_config(&self) -> PipelineConfig {
        PipelineConfig {
            threshold_mode: match self.threshold_mode {
                ThresholdModeArg::Hurst => ThresholdMode::Hurst,
                ThresholdModeArg::Fudge => ThresholdMode::Fudge,
            },
            fudge_factor: self.fudge,
            topo_dim: self.topo_dim,
            sobel_scale: self.sobel_scale,
            pre_se: self.se_pre.into(),
            post_se: self.se_post.into(),
            smooth_se: self.se_smooth.into(),
            outline_se: self.se_outline.into(),
            min_cluster_area: self.min_area,
            connectivity: match self.connectivity {
                ConnectivityArg::Four => Connectivity::Four,
                ConnectivityArg::Eight => Connectivity::Eight,
            },
            hurst_after_closing: self.hurst_after_closing,
        }
    }
}

impl From<SeArg> for SeChoice {
    fn from(arg: SeArg) -> SeChoice {
        match arg {
            SeArg::Square3 => SeChoice::Square3,
            SeArg::Diamond1 => SeChoice::Diamond1,
        }
    }
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Sierpinski carpet mask on a 3^order grid.
    Carpet {
        #[arg(long)]
        order: u32,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Midpoint-displacement fractional Brownian surface.
    Fbm {
        /// Roughness parameter in (0, 1].
        #[arg(long)]
        hurst: f64,
        /// Side length; a supported power of two plus one.
        #[arg(long, default_value_t = 257)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Smooth background with bright blobs and recorded ground truth.
    Phantom {
        /// Number of blobs.
        #[arg(short = 'k', long, default_value_t = 5)]
        blobs: usize,
        #[arg(long, default_value_t = 256)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Also write the blob centers and radius as JSON.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Format(_) | Error::Truncated { .. } | Error::Unsupported(_) | Error::Io(_) => 1,
        Error::Param(_)
        | Error::EmptyInput
        | Error::InsufficientScales { .. }
        | Error::DegenerateFit => 2,
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Detect(args) => {
            let image = read_pgm_file(&args.input)?;
            let config = args.config.to_config();
            let result = detect_clusters(&image, &config)?;
            write_staged(&args.output, |dir| write_detection_dir(&result, dir))?;
            eprintln!(
                "wrote {}: {} clusters (D={:.4}, H={:.4}, threshold={:.2})",
                args.output.display(),
                result.clusters.len(),
                result.estimate.dimension,
                result.hurst(),
                result.threshold.effective,
            );
            Ok(())
        }
        Command::Compare(args) => {
            let image = read_pgm_file(&args.input)?;
            let config = args.config.to_config();
            let report = compare_thresholds(&image, &config)?;
            write_staged(&args.output, |dir| write_comparison_dir(&report, dir))?;
            eprintln!(
                "wrote {}: hurst {} clusters / fudge {} clusters, xor {} px",
                args.output.display(),
                report.cluster_counts.hurst,
                report.cluster_counts.fudge,
                report.xor_pixel_count,
            );
            Ok(())
        }
        Command::Fractal(args) => {
            let image = read_pgm_file(&args.input)?;
            let series = differential_box_count(&image)?;
            let estimate = fit_dimension(&series, FractalKind::Grayscale)?;
            let estimate = hurst_coefficient(estimate, args.topo_dim)?;
            println!("dimension {:.6}", estimate.dimension);
            println!("hurst {:.6}", estimate.hurst.expect("set above"));
            println!("fit_r2 {:.6}", estimate.fit_r2);
            if args.csv {
                print!("{}", series.to_csv());
            }
            Ok(())
        }
        Command::Generate(cmd) => match cmd {
            GenerateCmd::Carpet { order, output } => {
                let mask = sierpinski_carpet(order)?;
                write_pgm_file(&output, &mask.to_gray())?;
                eprintln!("wrote {} (carpet order {order})", output.display());
                Ok(())
            }
            GenerateCmd::Fbm {
                hurst,
                size,
                seed,
                output,
            } => {
                let image = fbm_surface(hurst, size, seed)?;
                write_pgm_file(&output, &image)?;
                eprintln!(
                    "wrote {} (H={hurst}, {size}x{size}, seed {seed})",
                    output.display()
                );
                Ok(())
            }
            GenerateCmd::Phantom {
                blobs,
                size,
                seed,
                output,
                truth,
            } => {
                let (image, ground_truth) = phantom(blobs, size, seed)?;
                write_pgm_file(&output, &image)?;
                if let Some(truth_path) = truth {
                    fs::write(truth_path, phantom_truth_json(&ground_truth))?;
                }
                eprintln!(
                    "wrote {} ({blobs} blobs of radius {}, seed {seed})",
                    output.display(),
                    ground_truth.blob_radius,
                );
                Ok(())
            }
        },
    }
}

/// Writes the result directory through a sibling staging directory and
/// renames it into place, so a failed run leaves no partial output. An
/// existing output directory is replaced only when it looks like a
/// previous result (contains report.json or comparison.json).
fn write_staged(output: &Path, write: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
    let staging = staging_path(output)?;
    if staging.exists() {
        fs::remove_dir_all(&staging)?;
    }
    if let Err(err) = write(&staging) {
        let _ = fs::remove_dir_all(&staging);
        return Err(err);
    }
    if output.exists() {
        let replaceable =
            output.join("report.json").exists() || output.join("comparison.json").exists();
        if !replaceable {
            let _ = fs::remove_dir_all(&staging);
            return Err(Error::Io(std::io::Error::other(format!(
                "refusing to replace {}: not a previous result directory",
                output.display()
            ))));
        }
        fs::remove_dir_all(output)?;
    }
    fs::rename(&staging, output)?;
    Ok(())
}

fn staging_path(output: &Path) -> Result<PathBuf> {
    let name = output
        .file_name()
        .ok_or_else(|| Error::Param(format!("bad output path {}", output.display())))?;
    let mut staged = name.to_os_string();
    staged.push(".partial");
    Ok(output.with_file_name(staged))
}
