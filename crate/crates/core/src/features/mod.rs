//! Single-scale oriented FAST keypoints, rotated binary (BRIEF-style)
//! descriptors and cross-checked brute-force Hamming matching.

mod brief;
mod fast;
mod matching;
mod pattern;

pub use brief::{describe_brief, describe_keypoints, Descriptor};
pub use fast::{detect_fast, fast_score};
pub use matching::{match_bruteforce, match_bruteforce_with, Match, DEFAULT_MAX_DISTANCE};

use crate::error::{Error, Result};
use crate::image::Image;

/// Radius of the orientation / description patch (31×31).
pub const PATCH_RADIUS: usize = 15;

/// Smallest image side the detector accepts.
pub const MIN_IMAGE_SIDE: usize = 2 * PATCH_RADIUS + 2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Keypoint {
    pub x: f64,
    pub y: f64,
    /// Sum of absolute center/circle differences over the qualifying arc.
    pub score: u32,
    /// Intensity-centroid orientation in radians, in `[-pi, pi]`.
    pub angle: f64,
}

/// Luma via `round(0.299 R + 0.587 G + 0.114 B)`.
pub fn grayscale(img: &Image) -> Result<Image> {
    if img.channels() != 3 {
        return Err(Error::invalid(format!(
            "grayscale expects 3 channels, got {}",
            img.channels()
        )));
    }
    // Fixed-point weights scaled by 1000 keep the rounding exact.
    let data = img
        .pixels()
        .map(|p| {
            let s = 299 * p[0] as u32 + 587 * p[1] as u32 + 114 * p[2] as u32;
            ((s + 500) / 1000) as u8
        })
        .collect();
    Image::new(img.width(), img.height(), 1, data)
}

/// 5×5 box blur with edge replication, rounded to nearest.
pub fn box_blur5(img: &Image) -> Result<Image> {
    if img.channels() != 1 {
        return Err(Error::invalid("box blur expects a grayscale image"));
    }
    let (w, h) = img.dims();
    let clampi = |v: isize, n: usize| v.clamp(0, n as isize - 1) as usize;
    let mut horiz = vec![0u32; w * h];
    for y in 0..h {
        for x in 0..w {
            horiz[y * w + x] = (-2..=2)
                .map(|d| img.gray(clampi(x as isize + d, w), y) as u32)
                .sum();
        }
    }
    let mut data = vec![0u8; w * h];
    for y in 0..h {
        for x in 0..w {
            let s: u32 = (-2..=2)
                .map(|d| horiz[clampi(y as isize + d, h) * w + x])
                .sum();
            data[y * w + x] = ((s + 12) / 25) as u8;
        }
    }
    Image::new(w, h, 1, data)
}

/// Keypoints plus descriptors for one grayscale image.
#[derive(Clone, Debug, Default)]
pub struct Features {
    pub keypoints: Vec<Keypoint>,
    pub descriptors: Vec<Descriptor>,
}

/// Detects and describes features of an RGB or grayscale image.
pub fn extract(img: &Image, threshold: u8, max_keypoints: usize) -> Result<Features> {
    let gray = if img.channels() == 3 {
        grayscale(img)?
    } else {
        img.clone()
    };
    let kps = detect_fast(&gray, threshold, max_keypoints)?;
    let smooth = box_blur5(&gray)?;
    let (keypoints, descriptors) = describe_keypoints(&smooth, &kps);
    Ok(Features {
        keypoints,
        descriptors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grayscale_weights() {
        let img = Image::from_fn_rgb(3, 1, |x, _| match x {
            0 => [255, 255, 255],
            1 => [255, 0, 0],
            _ => [0, 255, 0],
        })
        .unwrap();
        assert_eq!(grayscale(&img).unwrap().data(), &[255, 76, 150]);
        let gray = Image::filled(2, 2, 1, 0).unwrap();
        assert!(matches!(grayscale(&gray), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn box_blur_preserves_constant_and_negates_exactly() {
        let flat = Image::filled(9, 7, 1, 77).unwrap();
        assert_eq!(box_blur5(&flat).unwrap(), flat);
        let img = Image::from_fn_gray(12, 12, |x, y| ((x * 37 + y * 91) % 256) as u8).unwrap();
        let neg = Image::from_fn_gray(12, 12, |x, y| 255 - img.gray(x, y)).unwrap();
        let (b, nb) = (box_blur5(&img).unwrap(), box_blur5(&neg).unwrap());
        assert!(b
            .data()
            .iter()
            .zip(nb.data())
            .all(|(p, q)| *p as u16 + *q as u16 == 255));
    }
}
