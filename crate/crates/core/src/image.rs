//! 8-bit interleaved image buffer and the pixel arithmetic shared by the
//! pipeline stages.

use crate::error::{Error, Result};
use crate::par;

/// Row-major, channel-interleaved 8-bit image with 1 (luma) or 3 (RGB) channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::invalid(format!(
                "images have 1 or 3 channels, got {channels}"
            )));
        }
        if data.len() != width * height * channels {
            return Err(Error::invalid(format!(
                "buffer holds {} samples, {width}x{height}x{channels} needs {}",
                data.len(),
                width * height * channels
            )));
        }
        Ok(Image {
            width,
            height,
            channels,
            data,
        })
    }

    /// Image filled with a constant sample value.
    pub fn filled(width: usize, height: usize, channels: usize, value: u8) -> Result<Self> {
        Image::new(
            width,
            height,
            channels,
            vec![value; width * height * channels],
        )
    }

    pub fn from_fn_gray(
        width: usize,
        height: usize,
        f: impl Fn(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Image::new(width, height, 1, data)
    }

    pub fn from_fn_rgb(
        width: usize,
        height: usize,
        f: impl Fn(usize, usize) -> [u8; 3],
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Image::new(width, height, 3, data)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn channels(&self) -> usize {
        self.channels
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub fn sample(&self, x: usize, y: usize, c: usize) -> u8 {
        self.data[(y * self.width + x) * self.channels + c]
    }

    /// Luma sample of a 1-channel image.
    #[inline]
    pub fn gray(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn rgb(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * self.channels;
        if self.channels == 3 {
            [self.data[i], self.data[i + 1], self.data[i + 2]]
        } else {
            let v = self.data[i];
            [v, v, v]
        }
    }

    /// Iterates over pixels as slices of `channels` samples.
    pub fn pixels(&self) -> std::slice::ChunksExact<'_, u8> {
        self.data.chunks_exact(self.channels)
    }

    pub(crate) fn same_shape(&self, other: &Image) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }
}

/// Rounds half away from zero and clamps to the 8-bit range.
#[inline]
pub(crate) fn quantize(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Bilinear resize with the half-pixel-center convention: output pixel `x`
/// samples source coordinate `(x + 0.5) * sw / dw - 0.5`, clamped to the
/// source extent.
pub fn resize_bilinear(img: &Image, new_w: usize, new_h: usize) -> Result<Image> {
    if new_w == 0 || new_h == 0 {
        return Err(Error::invalid(format!(
            "resize target must be positive, got {new_w}x{new_h}"
        )));
    }
    let (sw, sh, ch) = (img.width, img.height, img.channels);
    if (sw, sh) == (new_w, new_h) {
        return Ok(img.clone());
    }
    let sx = sw as f64 / new_w as f64;
    let sy = sh as f64 / new_h as f64;
    let taps = |scale: f64, n_src: usize, i: usize| {
        let s = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, (n_src - 1) as f64);
        let i0 = s.floor() as usize;
        let i1 = (i0 + 1).min(n_src - 1);
        (i0, i1, s - i0 as f64)
    };
    let xtaps: Vec<_> = (0..new_w).map(|x| taps(sx, sw, x)).collect();
    let mut data = vec![0u8; new_w * new_h * ch];
    par::for_each_row(&mut data, new_w * ch, |y, row| {
        let (y0, y1, fy) = taps(sy, sh, y);
        for (x, &(x0, x1, fx)) in xtaps.iter().enumerate() {
            for c in 0..ch {
                let p00 = img.sample(x0, y0, c) as f64;
                let p10 = img.sample(x1, y0, c) as f64;
                let p01 = img.sample(x0, y1, c) as f64;
                let p11 = img.sample(x1, y1, c) as f64;
                let top = p00 + (p10 - p00) * fx;
                let bottom = p01 + (p11 - p01) * fx;
                row[x * ch + c] = quantize(top + (bottom - top) * fy);
            }
        }
    });
    Image::new(new_w, new_h, ch, data)
}

/// Per-sample absolute difference `|a - b|`.
pub fn absdiff(a: &Image, b: &Image) -> Result<Image> {
    if !a.same_shape(b) {
        return Err(Error::invalid(format!(
            "absdiff operands differ: {}x{}x{} vs {}x{}x{}",
            a.width, a.height, a.channels, b.width, b.height, b.channels
        )));
    }
    let data = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(&p, &q)| p.abs_diff(q))
        .collect();
    Image::new(a.width, a.height, a.channels, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_absdiff(a: &Image, b: &Image) -> Vec<u8> {
        let mut out = Vec::new();
        for y in 0..a.height() {
            for x in 0..a.width() {
                for c in 0..a.channels() {
                    let d = a.sample(x, y, c) as i32 - b.sample(x, y, c) as i32;
                    out.push(d.unsigned_abs() as u8);
                }
            }
        }
        out
    }

    #[test]
    fn rejects_bad_buffers() {
        assert!(Image::new(0, 4, 1, vec![]).is_err());
        assert!(Image::new(2, 2, 2, vec![0; 8]).is_err());
        assert!(Image::new(2, 2, 3, vec![0; 11]).is_err());
        assert!(Image::new(2, 2, 3, vec![0; 12]).is_ok());
    }

    #[test]
    fn resize_downscales_working_resolution() {
        let img =
            Image::from_fn_rgb(640, 480, |x, y| [(x % 256) as u8, (y % 256) as u8, 7]).unwrap();
        let small = resize_bilinear(&img, 160, 120).unwrap();
        assert_eq!(small.dims(), (160, 120));
        assert_eq!(small.channels(), 3);
        assert!(small.pixels().all(|p| p[2] == 7));
    }

    #[test]
    fn resize_same_size_is_identity() {
        let img = Image::from_fn_gray(13, 7, |x, y| (x * 17 + y * 31) as u8).unwrap();
        assert_eq!(resize_bilinear(&img, 13, 7).unwrap(), img);
    }

    #[test]
    fn resize_checkerboard_to_single_pixel() {
        // Average of {0, 255, 255, 0} is 127.5, rounded half away from zero.
        let img = Image::new(2, 2, 1, vec![0, 255, 255, 0]).unwrap();
        let out = resize_bilinear(&img, 1, 1).unwrap();
        assert_eq!(out.data(), &[128]);
    }

    #[test]
    fn resize_zero_target_is_error() {
        let img = Image::filled(4, 4, 1, 9).unwrap();
        assert!(matches!(
            resize_bilinear(&img, 0, 4),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            resize_bilinear(&img, 4, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn absdiff_examples() {
        let a = Image::filled(5, 4, 3, 200).unwrap();
        let b = Image::filled(5, 4, 3, 50).unwrap();
        assert!(absdiff(&a, &b).unwrap().data().iter().all(|&v| v == 150));
        assert!(absdiff(&a, &a).unwrap().data().iter().all(|&v| v == 0));
        let c = Image::filled(5, 4, 1, 50).unwrap();
        assert!(matches!(absdiff(&a, &c), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn absdiff_matches_brute_force_on_random_pair() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let a_data: Vec<u8> = (0..8 * 8 * 3).map(|_| rng.random()).collect();
        let b_data: Vec<u8> = (0..8 * 8 * 3).map(|_| rng.random()).collect();
        let a = Image::new(8, 8, 3, a_data).unwrap();
        let b = Image::new(8, 8, 3, b_data).unwrap();
        assert_eq!(
            absdiff(&a, &b).unwrap().data(),
            brute_absdiff(&a, &b).as_slice()
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn absdiff_is_symmetric(
            (w, h, a, b) in (1usize..9, 1usize..9).prop_flat_map(|(w, h)| {
                (Just(w), Just(h),
                 proptest::collection::vec(any::<u8>(), w * h * 3),
                 proptest::collection::vec(any::<u8>(), w * h * 3))
            })
        ) {
            let a = Image::new(w, h, 3, a).unwrap();
            let b = Image::new(w, h, 3, b).unwrap();
            let a_before = a.clone();
            prop_assert_eq!(absdiff(&a, &b).unwrap(), absdiff(&b, &a).unwrap());
            prop_assert_eq!(a, a_before);
        }

        #[test]
        fn resize_round_trip_of_constant_image(
            w in 1usize..40, h in 1usize..40, nw in 1usize..40, nh in 1usize..40, v in any::<u8>()
        ) {
            let img = Image::filled(w, h, 3, v).unwrap();
            let there = resize_bilinear(&img, nw, nh).unwrap();
            let back = resize_bilinear(&there, w, h).unwrap();
            prop_assert_eq!(back, img);
        }
    }
}
