use super::{Keypoint, MIN_IMAGE_SIDE, PATCH_RADIUS};
use crate::error::{Error, Result};
use crate::image::Image;
use crate::par;

/// Bresenham circle of radius 3, clockwise from the top.
pub(crate) const CIRCLE: [(isize, isize); 16] = [
    (0, -3),
    (1, -3),
    (2, -2),
    (3, -1),
    (3, 0),
    (3, 1),
    (2, 2),
    (1, 3),
    (0, 3),
    (-1, 3),
    (-2, 2),
    (-3, 1),
    (-3, 0),
    (-3, -1),
    (-2, -2),
    (-1, -3),
];

const ARC_LEN: usize = 9;

/// FAST-9 response at `(x, y)`: 0 unless at least 9 contiguous circle pixels
/// are all brighter than `center + threshold` or all darker than
/// `center - threshold`; otherwise the summed absolute difference over the
/// longest such arc. The caller guarantees a 3-pixel border.
pub fn fast_score(img: &Image, x: usize, y: usize, threshold: u8) -> u32 {
    let c = img.gray(x, y) as i32;
    let t = threshold as i32;
    let mut diffs = [0i32; 16];
    for (d, &(dx, dy)) in diffs.iter_mut().zip(CIRCLE.iter()) {
        *d = img.gray((x as isize + dx) as usize, (y as isize + dy) as usize) as i32 - c;
    }
    // Quick rejection: any 9-arc contains at least two of the four compass points.
    let compass = [diffs[0], diffs[4], diffs[8], diffs[12]];
    if compass.iter().filter(|&&d| d > t).count() < 2
        && compass.iter().filter(|&&d| d < -t).count() < 2
    {
        return 0;
    }
    let mut best = 0u32;
    for sign in [1i32, -1] {
        let qualifies = |i: usize| sign * diffs[i % 16] > t;
        if (0..16).all(qualifies) {
            return diffs.iter().map(|d| d.unsigned_abs()).sum();
        }
        // Start scanning right after a non-qualifying position so runs do
        // not wrap mid-way.
        let Some(start) = (0..16).find(|&i| !qualifies(i)) else {
            continue;
        };
        let (mut len, mut sum) = (0usize, 0u32);
        for k in 1..=16 {
            let i = (start + k) % 16;
            if qualifies(i) {
                len += 1;
                sum += diffs[i].unsigned_abs();
            } else {
                if len >= ARC_LEN {
                    best = best.max(sum);
                }
                len = 0;
                sum = 0;
            }
        }
    }
    best
}

/// Intensity-centroid orientation over a disk of radius `PATCH_RADIUS`.
pub(crate) fn orientation(img: &Image, x: usize, y: usize) -> f64 {
    let r = PATCH_RADIUS as isize;
    let (mut m10, mut m01) = (0i64, 0i64);
    for dy in -r..=r {
        let half = (((r * r - dy * dy) as f64).sqrt()).floor() as isize;
        for dx in -half..=half {
            let v = img.gray((x as isize + dx) as usize, (y as isize + dy) as usize) as i64;
            m10 += dx as i64 * v;
            m01 += dy as i64 * v;
        }
    }
    (m01 as f64).atan2(m10 as f64)
}

/// Oriented FAST-9 keypoints with 3×3 non-maximum suppression, strongest
/// first (ties in raster order), at most `max_keypoints`.
///
/// Only pixels with a full `PATCH_RADIUS` margin are reported. On a score
/// plateau the first pixel in raster order survives.
pub fn detect_fast(img: &Image, threshold: u8, max_keypoints: usize) -> Result<Vec<Keypoint>> {
    if img.channels() != 1 {
        return Err(Error::invalid("FAST expects a grayscale image"));
    }
    let (w, h) = img.dims();
    if w < MIN_IMAGE_SIDE || h < MIN_IMAGE_SIDE {
        return Err(Error::invalid(format!(
            "image {w}x{h} is smaller than the {MIN_IMAGE_SIDE}x{MIN_IMAGE_SIDE} minimum"
        )));
    }
    let m = PATCH_RADIUS;
    let mut scores = vec![0u32; w * h];
    par::for_each_row(&mut scores, w, |y, row| {
        if y + 1 < m || y + m > h {
            return;
        }
        for (x, s) in row.iter_mut().enumerate().take(w - m + 1).skip(m - 1) {
            *s = fast_score(img, x, y, threshold);
        }
    });

    let mut keypoints = Vec::new();
    for y in m..h - m {
        for x in m..w - m {
            let s = scores[y * w + x];
            if s == 0 {
                continue;
            }
            let mut is_max = true;
            'nbr: for dy in -1isize..=1 {
                for dx in -1isize..=1 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let n = scores[(y as isize + dy) as usize * w + (x as isize + dx) as usize];
                    let earlier = dy < 0 || (dy == 0 && dx < 0);
                    if n > s || (n == s && earlier) {
                        is_max = false;
                        break 'nbr;
                    }
                }
            }
            if is_max {
                keypoints.push((s, x, y));
            }
        }
    }
    keypoints.sort_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)).then(a.1.cmp(&b.1)));
    keypoints.truncate(max_keypoints);
    Ok(keypoints
        .into_iter()
        .map(|(score, x, y)| Keypoint {
            x: x as f64,
            y: y as f64,
            score,
            angle: orientation(img, x, y),
        })
        .collect())
}
