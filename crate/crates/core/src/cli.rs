//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or validation errors, 2 when the run
//! completed but some pairs failed (recorded in the outputs).

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Component, Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::controller::{self, ControllerConfig, LightingMode};
use crate::error::{Error, Result};
use crate::eval::{self, Stats};
use crate::features::Keypoint;
use crate::homography::Homography;
use crate::image::Image;
use crate::ingest::{load_stream, pair_stream, CaptureMode, StreamManifest};
use crate::io::{self, PaletteConfig};
use crate::registration::{estimate_alignment, AlignConfig, AlignmentEstimate};
use crate::segmentation::{annotate_frames, write_dataset, AnnotateConfig};
use crate::synth::{self, SceneSpec};
use crate::types::{FramePair, LabelMask};

#[derive(Parser, Debug)]
#[command(
    name = "uvlabel",
    version,
    about = "Annotate images from paired regular/UV captures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a stream and list its (regular, UV) pairs.
    Pair {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Estimate per-pair UV-to-regular homographies.
    Align {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Subdirectory of --out for keypoint and match images.
        #[arg(long)]
        debug_dir: Option<PathBuf>,
        #[command(flatten)]
        align: AlignArgs,
        #[command(flatten)]
        jobs: JobsArg,
    },
    /// Extract label masks and write an image/mask dataset.
    Annotate {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        palette: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Capture regime; defaults to the manifest's.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Ambient mode: register each UV frame before differencing.
        #[arg(long)]
        moving_camera: bool,
        /// Also write regular-frame overlays of the masks.
        #[arg(long)]
        preview: bool,
        /// Overrides the palette's min_area.
        #[arg(long)]
        min_area: Option<usize>,
        #[command(flatten)]
        align: AlignArgs,
        #[command(flatten)]
        jobs: JobsArg,
    },
    /// Render a synthetic stream with ground truth from a scene spec.
    Synth {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 30)]
        frames: usize,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the seed in the scene file.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        jobs: JobsArg,
    },
    /// Compare mask sets by IoU.
    Eval {
        /// Directory of mask PNGs.
        #[arg(long)]
        a: PathBuf,
        /// Directory of mask PNGs matched to --a by file name.
        #[arg(
            long,
            conflicts_with = "reference",
            required_unless_present = "reference"
        )]
        b: Option<PathBuf>,
        /// A single reference mask every mask in --a is compared with.
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Only report this label; default is every label present.
        #[arg(long)]
        label: Option<u8>,
        /// Directory for report.json; without it the report goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write report.csv.
        #[arg(long, requires = "out")]
        csv: bool,
    },
    /// Print or write the lighting/trigger schedule.
    ControllerSim {
        /// Camera trigger rate, Hz.
        #[arg(long, default_value_t = 30.0)]
        rate: f64,
        #[arg(long, default_value_t = 1000)]
        duration_ms: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Dark)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1.0)]
        settle_ms: f64,
        #[arg(long)]
        exposure_ms: Option<f64>,
        /// Directory for schedule.csv; without it the schedule goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Dark,
    Ambient,
}

impl From<ModeArg> for CaptureMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Dark => CaptureMode::Dark,
            ModeArg::Ambient => CaptureMode::Ambient,
        }
    }
}

#[derive(Args, Debug)]
struct AlignArgs {
    /// RANSAC seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    fast_threshold: u8,
    #[arg(long, default_value_t = 500)]
    max_keypoints: usize,
}

impl AlignArgs {
    fn config(&self) -> AlignConfig {
        let mut cfg = AlignConfig {
            fast_threshold: self.fast_threshold,
            max_keypoints: self.max_keypoints,
            ..AlignConfig::default()
        };
        cfg.ransac.seed = self.seed;
        cfg
    }
}

#[derive(Args, Debug)]
struct JobsArg {
    /// Worker threads; default is the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
}

impl JobsArg {
    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R> {
        if self.jobs == Some(0) {
            return Err(Error::invalid("--jobs must be at least 1"));
        }
        #[cfg(feature = "parallel")]
        if let Some(n) = self.jobs {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::invalid(e.to_string()))?;
            return Ok(pool.install(f));
        }
        Ok(f())
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(0) => 0,
        Ok(failures) => {
            eprintln!("completed with {failures} failed pair(s)");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Runs a subcommand, returning the number of failed items.
fn dispatch(cmd: Command) -> Result<usize> {
    match cmd {
        Command::Pair { manifest, out } => cmd_pair(&manifest, &out),
        Command::Align {
            manifest,
            out,
            debug_dir,
            align,
            jobs,
        } => {
            let debug = debug_dir.map(|d| out_subdir(&out, &d)).transpose()?;
            let cfg = align.config();
            jobs.install(|| cmd_align(&manifest, &out, debug.as_deref(), &cfg))?
        }
        Command::Annotate {
            manifest,
            palette,
            out,
            mode,
            moving_camera,
            preview,
            min_area,
            align,
            jobs,
        } => {
            let palette = PaletteConfig::load(&palette)?;
            let (stream, frames) = load_stream(&manifest)?;
            let mode = mode.map_or(stream.mode, CaptureMode::from);
            if moving_camera && mode == CaptureMode::Dark {
                log::warn!("--moving-camera has no effect in dark mode");
            }
            let cfg = AnnotateConfig {
                mode,
                moving_camera,
                min_area: min_area.unwrap_or(palette.min_area),
                align: align.config(),
            };
            let dataset = jobs.install(|| annotate_frames(&frames, &palette.classes, &cfg))??;
            write_dataset(&out, &dataset, mode, &palette.classes, preview)?;
            Ok(dataset.failures())
        }
        Command::Synth {
            spec,
            frames,
            out,
            seed,
            jobs,
        } => {
            let mut scene: SceneSpec = io::read_json(&spec)?;
            if let Some(s) = seed {
                scene.seed = s;
            }
            let stream = jobs.install(|| synth::generate_stream(&scene, frames))??;
            synth::write_stream(&out, &scene, &stream)?;
            Ok(0)
        }
        Command::Eval {
            a,
            b,
            reference,
            label,
            out,
            csv,
        } => cmd_eval(
            &a,
            b.as_deref(),
            reference.as_deref(),
            label,
            out.as_deref(),
            csv,
        ),
        Command::ControllerSim {
            rate,
            duration_ms,
            mode,
            settle_ms,
            exposure_ms,
            out,
        } => {
            let cfg = ControllerConfig {
                camera_rate: rate,
                mode: match mode {
                    ModeArg::Dark => LightingMode::DarkRoom,
                    ModeArg::Ambient => LightingMode::AmbientBlink,
                },
                settle_ms,
                exposure_ms,
                ..ControllerConfig::default()
            };
            let signals = controller::schedule(&cfg, duration_ms)?;
            let text = controller::to_csv(&signals);
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    fs::write(dir.join("schedule.csv"), text)?;
                }
                None => print!("{text}"),
            }
            log::info!(
                "{} triggers, {} pairs",
                signals.len(),
                controller::pair_count(&signals)
            );
            Ok(0)
        }
    }
}

/// Resolves a relative subdirectory of `out`, refusing paths that escape it.
fn out_subdir(out: &Path, sub: &Path) -> Result<PathBuf> {
    let escapes = sub
        .components()
        .any(|c| !matches!(c, Component::Normal(_) | Component::CurDir));
    if escapes {
        return Err(Error::invalid(format!(
            "{} must be a relative path inside the output directory",
            sub.display()
        )));
    }
    Ok(out.join(sub))
}

#[derive(Serialize)]
struct FrameRef {
    seq: u64,
    path: PathBuf,
    t_ms: u64,
}

#[derive(Serialize)]
struct PairRecord {
    pair: usize,
    regular: FrameRef,
    uv: FrameRef,
}

fn frame_ref(manifest: &StreamManifest, seq: u64) -> FrameRef {
    let e = manifest
        .frames
        .iter()
        .find(|e| e.seq == seq)
        .expect("frames come from this manifest");
    FrameRef {
        seq,
        path: e.path.clone(),
        t_ms: e.t_ms,
    }
}

fn cmd_pair(manifest_path: &Path, out: &Path) -> Result<usize> {
    let (manifest, frames) = load_stream(manifest_path)?;
    let pairs = pair_stream(&frames)?;
    let records: Vec<PairRecord> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| PairRecord {
            pair: i,
            regular: frame_ref(&manifest, p.regular().seq),
            uv: frame_ref(&manifest, p.uv().seq),
        })
        .collect();
    fs::create_dir_all(out)?;
    io::write_json(&out.join("pairs.json"), &records)?;
    Ok(0)
}

#[derive(Serialize)]
struct AlignRecord {
    pair: usize,
    h: Homography,
    inliers: usize,
    failed: bool,
}

fn cmd_align(
    manifest_path: &Path,
    out: &Path,
    debug: Option<&Path>,
    cfg: &AlignConfig,
) -> Result<usize> {
    let (_, frames) = load_stream(manifest_path)?;
    let pairs = pair_stream(&frames)?;
    let estimates = crate::par::map(&pairs, |p| estimate_alignment(p, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(out)?;
    if let Some(dir) = debug {
        fs::create_dir_all(dir)?;
    }
    let mut records = Vec::with_capacity(pairs.len());
    for (i, (pair, est)) in pairs.iter().zip(&estimates).enumerate() {
        let (h, failed) = match &est.result {
            Ok((h, _)) => (*h, false),
            Err(e) => {
                log::warn!("pair {i}: {e}");
                (Homography::identity(), true)
            }
        };
        records.push(AlignRecord {
            pair: i,
            h,
            inliers: est.n_inliers(),
            failed,
        });
        if let Some(dir) = debug {
            io::write_png(
                &dir.join(format!("pair_{i:04}_keypoints.png")),
                &draw_keypoints(pair, est),
            )?;
            io::write_png(
                &dir.join(format!("pair_{i:04}_matches.png")),
                &draw_matches(pair, est),
            )?;
        }
    }
    io::write_json(&out.join("alignment.json"), &records)?;
    Ok(records.iter().filter(|r| r.failed).count())
}

fn put(data: &mut [u8], w: usize, h: usize, x: i64, y: i64, c: [u8; 3]) {
    if x >= 0 && y >= 0 && (x as usize) < w && (y as usize) < h {
        let i = 3 * (y as usize * w + x as usize);
        data[i..i + 3].copy_from_slice(&c);
    }
}

fn cross(data: &mut [u8], w: usize, h: usize, k: &Keypoint, c: [u8; 3]) {
    let (x, y) = (k.x.round() as i64, k.y.round() as i64);
    for d in -2..=2 {
        put(data, w, h, x + d, y, c);
        put(data, w, h, x, y + d, c);
    }
}

fn line(
    data: &mut [u8],
    w: usize,
    h: usize,
    (x0, y0): (i64, i64),
    (x1, y1): (i64, i64),
    c: [u8; 3],
) {
    let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
    let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
    let (mut x, mut y, mut err) = (x0, y0, dx + dy);
    loop {
        put(data, w, h, x, y, c);
        if x == x1 && y == y1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

/// Regular frame (left) and UV frame (right) with their keypoints.
fn draw_keypoints(pair: &FramePair, est: &AlignmentEstimate) -> Image {
    let (w, h) = pair.regular().image.dims();
    let mut data = side_by_side(&pair.regular().image, &pair.uv().image);
    for k in &est.regular.keypoints {
        cross(&mut data, 2 * w, h, k, [0, 255, 0]);
    }
    for k in &est.uv.keypoints {
        let shifted = Keypoint {
            x: k.x + w as f64,
            ..*k
        };
        cross(&mut data, 2 * w, h, &shifted, [255, 0, 255]);
    }
    Image::new(2 * w, h, 3, data).expect("sized above")
}

/// Same layout with match lines: inliers green, the rest red.
fn draw_matches(pair: &FramePair, est: &AlignmentEstimate) -> Image {
    let (w, h) = pair.regular().image.dims();
    let mut data = side_by_side(&pair.regular().image, &pair.uv().image);
    let inliers = est.result.as_ref().ok().map(|(_, f)| f.as_slice());
    for (i, m) in est.matches.iter().enumerate() {
        let (u, r) = (
            &est.uv.keypoints[m.index_a],
            &est.regular.keypoints[m.index_b],
        );
        let c = if inliers.is_some_and(|f| f[i]) {
            [0, 255, 0]
        } else {
            [255, 0, 0]
        };
        let a = (r.x.round() as i64, r.y.round() as i64);
        let b = ((u.x + w as f64).round() as i64, u.y.round() as i64);
        line(&mut data, 2 * w, h, a, b, c);
    }
    Image::new(2 * w, h, 3, data).expect("sized above")
}

fn side_by_side(left: &Image, right: &Image) -> Vec<u8> {
    let (w, h) = left.dims();
    let mut data = Vec::with_capacity(6 * w * h);
    for y in 0..h {
        data.extend_from_slice(&left.data()[3 * y * w..3 * (y + 1) * w]);
        data.extend_from_slice(&right.data()[3 * y * w..3 * (y + 1) * w]);
    }
    data
}

/// PNG files of a directory, sorted by name.
fn mask_files(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Err(Error::MissingFile(dir.to_path_buf()));
    }
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("png")));
    files.sort();
    if files.is_empty() {
        return Err(Error::invalid(format!("no PNG masks in {}", dir.display())));
    }
    Ok(files)
}

#[derive(Serialize)]
struct EvalReport {
    /// Masks compared, by file name.
    files: Vec<String>,
    per_label: BTreeMap<u8, Stats>,
}

fn cmd_eval(
    a: &Path,
    b: Option<&Path>,
    reference: Option<&Path>,
    label: Option<u8>,
    out: Option<&Path>,
    csv: bool,
) -> Result<usize> {
    let files = mask_files(a)?;
    let masks_a = files
        .iter()
        .map(|p| io::read_mask_png(p))
        .collect::<Result<Vec<_>>>()?;
    let names: Vec<String> = files
        .iter()
        .map(|p| {
            p.file_name()
                .expect("listed file")
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    enum Other {
        Dir(Vec<LabelMask>),
        Reference(LabelMask),
    }
    let other = match (b, reference) {
        (Some(dir), _) => Other::Dir(
            names
                .iter()
                .map(|n| io::read_mask_png(&dir.join(n)))
                .collect::<Result<Vec<_>>>()?,
        ),
        (None, Some(r)) => Other::Reference(io::read_mask_png(r)?),
        (None, None) => return Err(Error::invalid("give either --b or --reference")),
    };
    let labels: BTreeSet<u8> = match label {
        Some(l) => [l].into(),
        None => {
            let others: Vec<&LabelMask> = match &other {
                Other::Dir(v) => v.iter().collect(),
                Other::Reference(r) => vec![r],
            };
            masks_a
                .iter()
                .chain(others)
                .flat_map(|m| m.present_labels())
                .collect()
        }
    };
    let mut per_label = BTreeMap::new();
    for &l in &labels {
        let stats = match &other {
            Other::Reference(r) => eval::reference_agreement(&masks_a, r, l)?,
            Other::Dir(masks_b) => {
                let values = masks_a
                    .iter()
                    .zip(masks_b)
                    .map(|(x, y)| eval::iou(x, y, l))
                    .collect::<Result<Vec<_>>>()?;
                Stats::from_values(&values)
            }
        };
        per_label.insert(l, stats);
    }
    let report = EvalReport {
        files: names,
        per_label,
    };
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            io::write_json(&dir.join("report.json"), &report)?;
            if csv {
                let mut text = String::from("label,mean,std,n_pairs\n");
                for (l, s) in &report.per_label {
                    let _ = writeln!(text, "{l},{},{},{}", s.mean, s.std, s.n_pairs);
                }
                fs::write(dir.join("report.csv"), text)?;
            }
        }
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(0)
}
