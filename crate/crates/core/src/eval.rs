//! Mask agreement metrics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::LabelMask;

/// Intersection over union of the pixels carrying `label` in two masks.
/// Two empty sets agree perfectly (1.0).
pub fn iou(a: &LabelMask, b: &LabelMask, label: u8) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::invalid(format!(
            "mask sizes differ: {:?} vs {:?}",
            a.dims(),
            b.dims()
        )));
    }
    let (mut inter, mut union) = (0u64, 0u64);
    for (&x, &y) in a.labels().iter().zip(b.labels()) {
        let (fx, fy) = (x == label, y == label);
        inter += (fx && fy) as u64;
        union += (fx || fy) as u64;
    }
    Ok(if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub n_pairs: usize,
}

impl Stats {
    /// Mean and population std of `v`; NaN fields when `v` is empty.
    pub fn from_values(v: &[f64]) -> Stats {
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        Stats {
            mean,
            std: var.sqrt(),
            n_pairs: v.len(),
        }
    }
}

/// Mean and spread of IoU over all unordered pairs of masks.
pub fn agreement_stats(masks: &[LabelMask], label: u8) -> Result<Stats> {
    if masks.len() < 2 {
        return Err(Error::invalid("agreement needs at least two masks"));
    }
    let mut values = Vec::with_capacity(masks.len() * (masks.len() - 1) / 2);
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            values.push(iou(&masks[i], &masks[j], label)?);
        }
    }
    Ok(Stats::from_values(&values))
}

/// Mean and spread of IoU of each mask against one reference.
pub fn reference_agreement(masks: &[LabelMask], reference: &LabelMask, label: u8) -> Result<Stats> {
    if masks.is_empty() {
        return Err(Error::invalid("no masks to compare"));
    }
    let values = masks
        .iter()
        .map(|m| iou(m, reference, label))
        .collect::<Result<Vec<_>>>()?;
    Ok(Stats::from_values(&values))
}
