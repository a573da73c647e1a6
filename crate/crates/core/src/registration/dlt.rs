use nalgebra::{DMatrix, SVD};

use crate::error::{Error, Result};
use crate::homography::Homography;

/// A point in the source (UV) frame and its counterpart in the target
/// (regular) frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correspondence {
    pub src: (f64, f64),
    pub dst: (f64, f64),
}

impl Correspondence {
    pub fn new(src: (f64, f64), dst: (f64, f64)) -> Self {
        Correspondence { src, dst }
    }
}

/// Similarity that moves the centroid to the origin and scales the mean
/// distance from it to sqrt(2). Returns `(scale, cx, cy)`.
fn normalization(points: impl Iterator<Item = (f64, f64)> + Clone) -> Result<(f64, f64, f64)> {
    let n = points.clone().count() as f64;
    let (sx, sy) = points
        .clone()
        .fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (cx, cy) = (sx / n, sy / n);
    let mean_dist = points
        .map(|(x, y)| ((x - cx).powi(2) + (y - cy).powi(2)).sqrt())
        .sum::<f64>()
        / n;
    if !mean_dist.is_finite() || mean_dist <= 1e-12 {
        return Err(Error::DegenerateInput(
            "correspondence points coincide".into(),
        ));
    }
    Ok((std::f64::consts::SQRT_2 / mean_dist, cx, cy))
}

fn any_three_collinear(pts: &[(f64, f64)]) -> bool {
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                let cross = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
                if cross.abs() < 1e-9 {
                    return true;
                }
            }
        }
    }
    false
}

/// Least-squares direct linear transform with Hartley normalization on both
/// sides. The result maps `src` onto `dst` and is normalized to `h[2][2] = 1`.
pub fn solve_homography_dlt(correspondences: &[Correspondence]) -> Result<Homography> {
    let n = correspondences.len();
    if n < 4 {
        return Err(Error::InsufficientData { needed: 4, got: n });
    }
    let (ss, scx, scy) = normalization(correspondences.iter().map(|c| c.src))?;
    let (ds, dcx, dcy) = normalization(correspondences.iter().map(|c| c.dst))?;
    let norm_src: Vec<(f64, f64)> = correspondences
        .iter()
        .map(|c| (ss * (c.src.0 - scx), ss * (c.src.1 - scy)))
        .collect();
    let norm_dst: Vec<(f64, f64)> = correspondences
        .iter()
        .map(|c| (ds * (c.dst.0 - dcx), ds * (c.dst.1 - dcy)))
        .collect();
    if n == 4 && (any_three_collinear(&norm_src) || any_three_collinear(&norm_dst)) {
        return Err(Error::DegenerateInput(
            "three of four points are collinear".into(),
        ));
    }

    // Pad with zero rows so the SVD yields a full 9x9 right basis.
    let rows = (2 * n).max(9);
    let mut a = DMatrix::<f64>::zeros(rows, 9);
    for (i, (&(x, y), &(u, v))) in norm_src.iter().zip(norm_dst.iter()).enumerate() {
        let r = 2 * i;
        a[(r, 0)] = -x;
        a[(r, 1)] = -y;
        a[(r, 2)] = -1.0;
        a[(r, 6)] = u * x;
        a[(r, 7)] = u * y;
        a[(r, 8)] = u;
        a[(r + 1, 3)] = -x;
        a[(r + 1, 4)] = -y;
        a[(r + 1, 5)] = -1.0;
        a[(r + 1, 6)] = v * x;
        a[(r + 1, 7)] = v * y;
        a[(r + 1, 8)] = v;
    }
    let svd = SVD::new(a, false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::DegenerateInput("SVD did not converge".into()))?;
    let mut order: Vec<usize> = (0..9).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sigma = |k: usize| svd.singular_values[order[k]];
    if sigma(0).is_nan() || sigma(0) <= 0.0 || sigma(7) / sigma(0) < 1e-9 {
        return Err(Error::DegenerateInput(
            "correspondences do not determine a unique homography".into(),
        ));
    }
    let null = v_t.row(order[8]);
    let hn = [
        [null[0], null[1], null[2]],
        [null[3], null[4], null[5]],
        [null[6], null[7], null[8]],
    ];

    // Undo normalization: H = T_dst^-1 * Hn * T_src.
    let t_src = [[ss, 0.0, -ss * scx], [0.0, ss, -ss * scy], [0.0, 0.0, 1.0]];
    let t_dst_inv = [[1.0 / ds, 0.0, dcx], [0.0, 1.0 / ds, dcy], [0.0, 0.0, 1.0]];
    let mul = |a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]| {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    };
    Homography::new(mul(&t_dst_inv, &mul(&hn, &t_src)))
}
