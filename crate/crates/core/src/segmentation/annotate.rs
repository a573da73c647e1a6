use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::classify::{ambient_mode_mask, dark_mode_mask};
use super::components::postprocess;
use super::DEFAULT_MIN_AREA;
use crate::error::Result;
use crate::homography::Homography;
use crate::image::Image;
use crate::ingest::{load_stream, pair_stream, CaptureMode};
use crate::io;
use crate::par;
use crate::registration::{align_pair, AlignConfig};
use crate::types::{ClassPalette, Frame, FramePair, LabelMask};

/// Assumptions recorded with every written dataset.
pub const ASSUMPTIONS: &[&str] = &[
    "camera exposure and white balance are fixed across the two captures of a pair",
    "object motion between the two captures of a pair is not compensated",
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnotateConfig {
    pub mode: CaptureMode,
    /// Ambient mode only: register the UV capture before differencing.
    pub moving_camera: bool,
    pub min_area: usize,
    pub align: AlignConfig,
}

impl AnnotateConfig {
    pub fn new(mode: CaptureMode) -> Self {
        AnnotateConfig {
            mode,
            moving_camera: false,
            min_area: DEFAULT_MIN_AREA,
            align: AlignConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlignmentStatus {
    /// Dark mode: the regular frame plays no part in mask extraction.
    Skipped,
    /// Static camera assumed.
    Identity,
    Aligned,
    /// Estimation failed; identity fallback used.
    Failed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnotatedSample {
    pub pair_index: usize,
    pub regular_seq: u64,
    pub uv_seq: u64,
    pub image: Image,
    /// `None` when annotating this pair failed; see `error`.
    pub mask: Option<LabelMask>,
    pub alignment: AlignmentStatus,
    pub homography: Option<Homography>,
    pub inliers: usize,
    pub error: Option<String>,
}

impl AnnotatedSample {
    /// Whether this sample should be reported as a per-item failure.
    pub fn is_failure(&self) -> bool {
        self.error.is_some() || self.alignment == AlignmentStatus::Failed
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Dataset {
    pub samples: Vec<AnnotatedSample>,
}

impl Dataset {
    pub fn failures(&self) -> usize {
        self.samples.iter().filter(|s| s.is_failure()).count()
    }
}

fn annotate_pair(
    index: usize,
    pair: &FramePair,
    palette: &ClassPalette,
    cfg: &AnnotateConfig,
) -> AnnotatedSample {
    let mut sample = AnnotatedSample {
        pair_index: index,
        regular_seq: pair.regular().seq,
        uv_seq: pair.uv().seq,
        image: pair.regular().image.clone(),
        mask: None,
        alignment: AlignmentStatus::Skipped,
        homography: None,
        inliers: 0,
        error: None,
    };
    let mask = match cfg.mode {
        CaptureMode::Dark => dark_mode_mask(pair.uv(), palette),
        CaptureMode::Ambient => {
            let aligned = if cfg.moving_camera {
                align_pair(pair.clone(), &cfg.align)
            } else {
                Ok(pair.clone().with_identity_alignment(false, 0))
            };
            aligned.and_then(|p| {
                let a = p.alignment().expect("alignment was just set");
                sample.alignment = match (cfg.moving_camera, a.failed) {
                    (_, true) => AlignmentStatus::Failed,
                    (true, false) => AlignmentStatus::Aligned,
                    (false, false) => AlignmentStatus::Identity,
                };
                sample.homography = Some(a.homography);
                sample.inliers = a.inliers;
                ambient_mode_mask(&p, palette)
            })
        }
    };
    match mask {
        Ok(m) => sample.mask = Some(postprocess(&m, cfg.min_area)),
        Err(e) => {
            log::warn!("pair {index}: {e}");
            sample.error = Some(e.to_string());
        }
    }
    sample
}

/// Annotates already-formed pairs, in parallel when enabled; output order
/// follows pair order.
pub fn annotate_pairs(
    pairs: &[FramePair],
    palette: &ClassPalette,
    cfg: &AnnotateConfig,
) -> Dataset {
    let indexed: Vec<(usize, &FramePair)> = pairs.iter().enumerate().collect();
    Dataset {
        samples: par::map(&indexed, |&(i, p)| annotate_pair(i, p, palette, cfg)),
    }
}

/// Pairs a frame stream and annotates every pair. Alternation errors abort;
/// per-pair errors are recorded in the samples.
pub fn annotate_frames(
    frames: &[Frame],
    palette: &ClassPalette,
    cfg: &AnnotateConfig,
) -> Result<Dataset> {
    let pairs = pair_stream(frames)?;
    Ok(annotate_pairs(&pairs, palette, cfg))
}

pub fn annotate_stream(
    manifest_path: &Path,
    palette: &ClassPalette,
    cfg: &AnnotateConfig,
) -> Result<Dataset> {
    let (_, frames) = load_stream(manifest_path)?;
    annotate_frames(&frames, palette, cfg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub pair: usize,
    pub regular_seq: u64,
    pub uv_seq: u64,
    pub image: PathBuf,
    pub mask: Option<PathBuf>,
    pub alignment: AlignmentStatus,
    pub homography: Option<Homography>,
    pub inliers: usize,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub mode: CaptureMode,
    pub assumptions: Vec<String>,
    pub samples: Vec<SampleRecord>,
}

/// Regular image with each labeled pixel blended halfway toward its class color.
pub fn overlay(image: &Image, mask: &LabelMask, palette: &ClassPalette) -> Image {
    Image::from_fn_rgb(image.width(), image.height(), |x, y| {
        let px = image.rgb(x, y);
        match palette.get(mask.get(x, y)) {
            Some(c) => [0, 1, 2].map(|i| (px[i] as u16 + c.color[i] as u16).div_ceil(2) as u8),
            None => px,
        }
    })
    .expect("same size as source")
}

/// Writes `images/`, `masks/`, optional `previews/` and `manifest.json`
/// under `out_dir`.
pub fn write_dataset(
    out_dir: &Path,
    dataset: &Dataset,
    mode: CaptureMode,
    palette: &ClassPalette,
    preview: bool,
) -> Result<DatasetManifest> {
    fs::create_dir_all(out_dir.join("images"))?;
    fs::create_dir_all(out_dir.join("masks"))?;
    if preview {
        fs::create_dir_all(out_dir.join("previews"))?;
    }
    let mut records = Vec::with_capacity(dataset.samples.len());
    for s in &dataset.samples {
        let name = format!("pair_{:04}.png", s.pair_index);
        let image = PathBuf::from("images").join(&name);
        io::write_png(&out_dir.join(&image), &s.image)?;
        let mask = match &s.mask {
            Some(m) => {
                let rel = PathBuf::from("masks").join(&name);
                io::write_mask_png(&out_dir.join(&rel), m)?;
                if preview {
                    io::write_png(
                        &out_dir.join("previews").join(&name),
                        &overlay(&s.image, m, palette),
                    )?;
                }
                Some(rel)
            }
            None => None,
        };
        records.push(SampleRecord {
            pair: s.pair_index,
            regular_seq: s.regular_seq,
            uv_seq: s.uv_seq,
            image,
            mask,
            alignment: s.alignment,
            homography: s.homography,
            inliers: s.inliers,
            error: s.error.clone(),
        });
    }
    let manifest = DatasetManifest {
        mode,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        samples: records,
    };
    io::write_json(&out_dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}
