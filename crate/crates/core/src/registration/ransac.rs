use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dlt::{solve_homography_dlt, Correspondence};
use crate::error::{Error, Result};
use crate::homography::Homography;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RansacConfig {
    pub iterations: usize,
    /// Symmetric transfer error cutoff, pixels.
    pub inlier_threshold: f64,
    pub min_inliers: usize,
    pub seed: u64,
}

impl Default for RansacConfig {
    fn default() -> Self {
        RansacConfig {
            iterations: 1000,
            inlier_threshold: 2.0,
            min_inliers: 12,
            seed: 0,
        }
    }
}

impl RansacConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::invalid("RANSAC needs at least one iteration"));
        }
        if self.inlier_threshold.is_nan() || self.inlier_threshold <= 0.0 {
            return Err(Error::invalid("inlier threshold must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RansacResult {
    pub homography: Homography,
    pub inliers: Vec<bool>,
    pub n_inliers: usize,
}

/// Mean of the forward (`h`) and backward (`h_inv`) reprojection distances.
pub fn symmetric_transfer_error(h: &Homography, h_inv: &Homography, c: &Correspondence) -> f64 {
    match (h.apply(c.src.0, c.src.1), h_inv.apply(c.dst.0, c.dst.1)) {
        (Some(f), Some(b)) => {
            0.5 * ((f.0 - c.dst.0).hypot(f.1 - c.dst.1) + (b.0 - c.src.0).hypot(b.1 - c.src.1))
        }
        _ => f64::INFINITY,
    }
}

/// Inlier flags plus the summed error of the inliers.
fn score(
    h: &Homography,
    corr: &[Correspondence],
    threshold: f64,
) -> Option<(Vec<bool>, usize, f64)> {
    let h_inv = h.inverse().ok()?;
    let mut flags = Vec::with_capacity(corr.len());
    let (mut count, mut total) = (0usize, 0.0);
    for c in corr {
        let e = symmetric_transfer_error(h, &h_inv, c);
        let inlier = e <= threshold;
        if inlier {
            count += 1;
            total += e;
        }
        flags.push(inlier);
    }
    Some((flags, count, total))
}

/// RANSAC over minimal 4-point DLT hypotheses, followed by a DLT refit on
/// the inliers of the best hypothesis. Deterministic for a given seed and
/// independent of thread count: samples are drawn up front and hypotheses
/// compared by (inlier count, lower error sum, earlier iteration).
pub fn estimate_homography_ransac(
    corr: &[Correspondence],
    cfg: &RansacConfig,
) -> Result<RansacResult> {
    cfg.validate()?;
    let n = corr.len();
    if n < 4 {
        return Err(Error::InsufficientData { needed: 4, got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let samples: Vec<[usize; 4]> = (0..cfg.iterations)
        .map(|_| {
            let idx = rand::seq::index::sample(&mut rng, n, 4);
            [idx.index(0), idx.index(1), idx.index(2), idx.index(3)]
        })
        .collect();

    let scored = par::map(&samples, |s| {
        let minimal = s.map(|i| corr[i]);
        let h = solve_homography_dlt(&minimal).ok()?;
        let (_, count, total) = score(&h, corr, cfg.inlier_threshold)?;
        Some((h, count, total))
    });
    let mut best: Option<(Homography, usize, f64)> = None;
    for (h, count, total) in scored.into_iter().flatten() {
        let better = match &best {
            None => true,
            Some((_, bc, bt)) => count > *bc || (count == *bc && total < *bt),
        };
        if better {
            best = Some((h, count, total));
        }
    }
    let Some((hyp, hyp_count, _)) = best else {
        return Err(Error::AlignmentFailed {
            inliers: 0,
            required: cfg.min_inliers,
        });
    };

    let (hyp_flags, _, _) = score(&hyp, corr, cfg.inlier_threshold).expect("hypothesis was scored");
    let mut result = RansacResult {
        homography: hyp,
        inliers: hyp_flags,
        n_inliers: hyp_count,
    };
    let inlier_set: Vec<Correspondence> = corr
        .iter()
        .zip(&result.inliers)
        .filter(|(_, &f)| f)
        .map(|(c, _)| *c)
        .collect();
    if let Ok(refit) = solve_homography_dlt(&inlier_set) {
        if let Some((flags, count, _)) = score(&refit, corr, cfg.inlier_threshold) {
            if count >= hyp_count {
                result = RansacResult {
                    homography: refit,
                    inliers: flags,
                    n_inliers: count,
                };
            }
        }
    }
    if result.n_inliers < cfg.min_inliers {
        return Err(Error::AlignmentFailed {
            inliers: result.n_inliers,
            required: cfg.min_inliers,
        });
    }
    Ok(result)
}
