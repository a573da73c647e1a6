use crate::error::{Error, Result};
use crate::homography::Homography;
use crate::image::{quantize, Image};
use crate::par;
use crate::types::ValidityMask;

const EDGE_EPS: f64 = 1e-9;

/// Inverse-mapping warp: output pixel `(x, y)` takes the bilinear sample of
/// `img` at `h^-1 (x, y)`. Samples falling outside the source are 0 and
/// flagged invalid in the returned mask.
pub fn warp(
    img: &Image,
    h: &Homography,
    out_w: usize,
    out_h: usize,
) -> Result<(Image, ValidityMask)> {
    if out_w == 0 || out_h == 0 {
        return Err(Error::invalid("warp output size must be positive"));
    }
    let inv = h
        .inverse()
        .map_err(|_| Error::DegenerateInput("warp homography is not invertible".into()))?;
    let (w, h_src, ch) = (img.width(), img.height(), img.channels());
    let (max_x, max_y) = ((w - 1) as f64, (h_src - 1) as f64);
    let rows = par::map_range(out_h, |y| {
        let mut data = vec![0u8; out_w * ch];
        let mut valid = vec![false; out_w];
        for x in 0..out_w {
            let Some((sx, sy)) = inv.apply(x as f64, y as f64) else {
                continue;
            };
            if !(sx >= -EDGE_EPS
                && sy >= -EDGE_EPS
                && sx <= max_x + EDGE_EPS
                && sy <= max_y + EDGE_EPS)
            {
                continue;
            }
            let (sx, sy) = (sx.clamp(0.0, max_x), sy.clamp(0.0, max_y));
            let (x0, y0) = (sx.floor() as usize, sy.floor() as usize);
            let (x1, y1) = ((x0 + 1).min(w - 1), (y0 + 1).min(h_src - 1));
            let (fx, fy) = (sx - x0 as f64, sy - y0 as f64);
            for c in 0..ch {
                let p00 = img.sample(x0, y0, c) as f64;
                let p10 = img.sample(x1, y0, c) as f64;
                let p01 = img.sample(x0, y1, c) as f64;
                let p11 = img.sample(x1, y1, c) as f64;
                let top = p00 + (p10 - p00) * fx;
                let bottom = p01 + (p11 - p01) * fx;
                data[x * ch + c] = quantize(top + (bottom - top) * fy);
            }
            valid[x] = true;
        }
        (data, valid)
    });
    let mut data = Vec::with_capacity(out_w * out_h * ch);
    let mut valid = Vec::with_capacity(out_w * out_h);
    for (d, v) in rows {
        data.extend_from_slice(&d);
        valid.extend_from_slice(&v);
    }
    Ok((
        Image::new(out_w, out_h, ch, data)?,
        ValidityMask::from_vec(out_w, out_h, valid),
    ))
}
