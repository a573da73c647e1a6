#![allow(dead_code)]

use uvlabel::synth::{Background, BlobSpec, CameraMotion, SceneSpec, Shape};

pub fn ellipse(
    label: u8,
    emission: [u8; 3],
    cx: f64,
    cy: f64,
    rx: f64,
    ry: f64,
    angle: f64,
) -> BlobSpec {
    BlobSpec {
        label,
        emission,
        shape: Shape::Ellipse {
            cx,
            cy,
            rx,
            ry,
            angle,
        },
        velocity: [0.0, 0.0],
        albedo: None,
    }
}

/// 160x120 dark-room scene: black apart from the regular lamp on a
/// checkerboard, one red blob.
pub fn dark_scene(seed: u64, noise_sigma: f64) -> SceneSpec {
    SceneSpec {
        image_size: [160, 120],
        background: Background::Checkerboard {
            cell: 10.0,
            low: 60,
            high: 200,
        },
        blobs: vec![ellipse(1, [255, 30, 20], 80.0, 60.0, 28.0, 18.0, 0.3)],
        camera_motion: CameraMotion::default(),
        uv_emission_gain: 1.0,
        ambient_level: 0,
        regular_light: 200,
        noise_sigma,
        camera_rate: 30.0,
        seed,
    }
}

/// 160x120 ambient scene on a fine random texture, one red blob.
pub fn ambient_scene(seed: u64, max_translation: f64) -> SceneSpec {
    SceneSpec {
        image_size: [160, 120],
        background: Background::RandomTexture {
            cell: 4.0,
            low: 0,
            high: 255,
        },
        blobs: vec![ellipse(1, [255, 40, 0], 80.0, 60.0, 25.0, 18.0, 0.4)],
        camera_motion: CameraMotion {
            max_translation,
            max_rotation: if max_translation > 0.0 { 0.01 } else { 0.0 },
        },
        uv_emission_gain: 0.6,
        ambient_level: 120,
        regular_light: 0,
        noise_sigma: 2.0,
        camera_rate: 30.0,
        seed,
    }
}

/// IoU by counting |A|, |B| and |A ∩ B| pixel by pixel through `get`,
/// union taken by inclusion-exclusion.
pub fn brute_iou(a: &uvlabel::LabelMask, b: &uvlabel::LabelMask, label: u8) -> f64 {
    let (mut na, mut nb, mut both) = (0usize, 0usize, 0usize);
    for y in 0..a.height() {
        for x in 0..a.width() {
            let (ia, ib) = (a.get(x, y) == label, b.get(x, y) == label);
            na += ia as usize;
            nb += ib as usize;
            both += (ia && ib) as usize;
        }
    }
    let union = na + nb - both;
    if union == 0 {
        1.0
    } else {
        both as f64 / union as f64
    }
}

/// Mean and population std, summed left to right.
pub fn brute_mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mut sum = 0.0;
    for v in values {
        sum += v;
    }
    let mean = sum / n;
    let mut sq = 0.0;
    for v in values {
        sq += (v - mean) * (v - mean);
    }
    (mean, (sq / n).sqrt())
}

/// 4-neighbour dilation (grow) or erosion (shrink) of the label-1 set.
pub fn morph(m: &uvlabel::LabelMask, grow: bool) -> uvlabel::LabelMask {
    let (w, h) = m.dims();
    let mut out = m.clone();
    for y in 0..h {
        for x in 0..w {
            let mut nb = vec![m.get(x, y)];
            if x > 0 {
                nb.push(m.get(x - 1, y));
            }
            if x + 1 < w {
                nb.push(m.get(x + 1, y));
            }
            if y > 0 {
                nb.push(m.get(x, y - 1));
            }
            if y + 1 < h {
                nb.push(m.get(x, y + 1));
            }
            let v = if grow {
                nb.contains(&1)
            } else {
                nb.iter().all(|&l| l == 1)
            };
            out.set(x, y, v as u8);
        }
    }
    out
}

/// Every file under `dir` as (relative path, contents), sorted.
pub fn snapshot(dir: &std::path::Path) -> Vec<(std::path::PathBuf, Vec<u8>)> {
    fn walk(
        root: &std::path::Path,
        d: &std::path::Path,
        out: &mut Vec<(std::path::PathBuf, Vec<u8>)>,
    ) {
        for e in std::fs::read_dir(d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                walk(root, &p, out);
            } else {
                out.push((
                    p.strip_prefix(root).unwrap().to_path_buf(),
                    std::fs::read(&p).unwrap(),
                ));
            }
        }
    }
    let mut out = Vec::new();
    if dir.exists() {
        walk(dir, dir, &mut out);
    }
    out.sort();
    out
}

/// Runs the CLI binary in `cwd`, returning (exit code, stdout, stderr).
pub fn uvlabel(cwd: &std::path::Path, args: &[&str]) -> (i32, String, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_uvlabel"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

pub fn write_spec(path: &std::path::Path, spec: &SceneSpec) {
    std::fs::write(path, serde_json::to_string_pretty(spec).unwrap()).unwrap();
}
