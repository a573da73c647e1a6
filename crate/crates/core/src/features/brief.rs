use super::pattern::{BRIEF_PATTERN, PATTERN_RADIUS};
use super::{Keypoint, PATCH_RADIUS};
use crate::image::Image;

// Rotated samples plus the 5x5 smoothing footprint stay inside the patch.
const _: () = assert!(PATTERN_RADIUS + 2 <= PATCH_RADIUS as i32);

/// 256-bit binary descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Descriptor(pub [u64; 4]);

impl Descriptor {
    #[inline]
    pub fn hamming(&self, other: &Descriptor) -> u32 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn inverted(&self) -> Descriptor {
        Descriptor(self.0.map(|w| !w))
    }
}

fn has_margin(img: &Image, kp: &Keypoint) -> bool {
    let r = PATCH_RADIUS as f64;
    kp.x.is_finite()
        && kp.y.is_finite()
        && kp.x >= r
        && kp.y >= r
        && kp.x + r <= (img.width() - 1) as f64
        && kp.y + r <= (img.height() - 1) as f64
}

/// Steered binary descriptor of `kp` on a pre-smoothed grayscale image.
///
/// Bit `i` is set when the smoothed intensity at the first point of pattern
/// pair `i`, rotated by `kp.angle`, is less than at the second point.
/// Returns `None` for keypoints without a full patch margin.
pub fn describe_brief(smoothed: &Image, kp: &Keypoint) -> Option<Descriptor> {
    if smoothed.channels() != 1 || !has_margin(smoothed, kp) {
        return None;
    }
    let (s, c) = kp.angle.sin_cos();
    let (cx, cy) = (kp.x.round() as isize, kp.y.round() as isize);
    let sample = |px: i8, py: i8| {
        let (px, py) = (px as f64, py as f64);
        let rx = (c * px - s * py).round() as isize;
        let ry = (s * px + c * py).round() as isize;
        smoothed.gray((cx + rx) as usize, (cy + ry) as usize)
    };
    let mut bits = [0u64; 4];
    for (i, p) in BRIEF_PATTERN.iter().enumerate() {
        if sample(p[0], p[1]) < sample(p[2], p[3]) {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    Some(Descriptor(bits))
}

/// Describes every keypoint that has a patch margin; the rest are skipped
/// and counted in the debug log.
pub fn describe_keypoints(smoothed: &Image, kps: &[Keypoint]) -> (Vec<Keypoint>, Vec<Descriptor>) {
    let mut kept = Vec::with_capacity(kps.len());
    let mut descs = Vec::with_capacity(kps.len());
    for kp in kps {
        if let Some(d) = describe_brief(smoothed, kp) {
            kept.push(*kp);
            descs.push(d);
        }
    }
    if kept.len() < kps.len() {
        log::debug!(
            "skipped {} keypoints too close to the border",
            kps.len() - kept.len()
        );
    }
    (kept, descs)
}
