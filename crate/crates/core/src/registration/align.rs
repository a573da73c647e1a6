use serde::{Deserialize, Serialize};

use super::dlt::Correspondence;
use super::ransac::{estimate_homography_ransac, RansacConfig};
use super::warp::warp;
use crate::error::{Error, Result};
use crate::features::{self, Features, Match};
use crate::homography::Homography;
use crate::types::{Alignment, FramePair};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlignConfig {
    /// FAST intensity threshold.
    pub fast_threshold: u8,
    /// Keypoint budget per frame.
    pub max_keypoints: usize,
    /// Hamming cutoff for cross-checked matches.
    pub max_distance: u32,
    pub ransac: RansacConfig,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig {
            fast_threshold: 20,
            max_keypoints: 500,
            max_distance: features::DEFAULT_MAX_DISTANCE,
            ransac: RansacConfig::default(),
        }
    }
}

/// Everything the three alignment steps produced, kept for diagnostics.
#[derive(Debug)]
pub struct AlignmentEstimate {
    pub regular: Features,
    pub uv: Features,
    /// `index_a` indexes UV keypoints, `index_b` regular keypoints.
    pub matches: Vec<Match>,
    /// UV→regular homography; `Err` when estimation failed.
    pub result: Result<(Homography, Vec<bool>)>,
}

impl AlignmentEstimate {
    pub fn n_inliers(&self) -> usize {
        match &self.result {
            Ok((_, flags)) => flags.iter().filter(|&&f| f).count(),
            Err(Error::AlignmentFailed { inliers, .. }) => *inliers,
            Err(_) => 0,
        }
    }
}

/// Runs feature extraction on both frames, brute-force matching, and robust
/// homography estimation (UV coordinates → regular coordinates).
pub fn estimate_alignment(pair: &FramePair, cfg: &AlignConfig) -> Result<AlignmentEstimate> {
    let regular = features::extract(&pair.regular().image, cfg.fast_threshold, cfg.max_keypoints)?;
    let uv = features::extract(&pair.uv().image, cfg.fast_threshold, cfg.max_keypoints)?;
    let matches =
        features::match_bruteforce_with(&uv.descriptors, &regular.descriptors, cfg.max_distance);
    let corr: Vec<Correspondence> = matches
        .iter()
        .map(|m| {
            let (a, b) = (&uv.keypoints[m.index_a], &regular.keypoints[m.index_b]);
            Correspondence::new((a.x, a.y), (b.x, b.y))
        })
        .collect();
    let result = estimate_homography_ransac(&corr, &cfg.ransac).map(|r| (r.homography, r.inliers));
    Ok(AlignmentEstimate {
        regular,
        uv,
        matches,
        result,
    })
}

/// Registers the UV frame onto the regular frame.
///
/// On success the UV image is replaced by its warped version and the pair
/// carries the homography and validity mask. When estimation fails (too few
/// features, matches or inliers) the pair comes back unmodified with an
/// identity alignment marked as failed.
pub fn align_pair(pair: FramePair, cfg: &AlignConfig) -> Result<FramePair> {
    let estimate = estimate_alignment(&pair, cfg)?;
    let inliers = estimate.n_inliers();
    match estimate.result {
        Ok((h, _)) => {
            let (w, hgt) = pair.regular().image.dims();
            let (warped, valid) = warp(&pair.uv().image, &h, w, hgt)?;
            pair.with_alignment(
                warped,
                Alignment {
                    homography: h,
                    valid: Some(valid),
                    inliers,
                    failed: false,
                },
            )
        }
        Err(
            Error::AlignmentFailed { .. }
            | Error::InsufficientData { .. }
            | Error::DegenerateInput(_),
        ) => {
            log::warn!(
                "alignment of pair (seq {}, {}) failed with {inliers} inliers; assuming a static camera",
                pair.regular().seq,
                pair.uv().seq
            );
            Ok(pair.with_identity_alignment(true, inliers))
        }
        Err(e) => Err(e),
    }
}
