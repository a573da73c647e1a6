//! Synthetic capture streams with planted ground truth.
//!
//! A scene is a textured background plane with fluorescent-painted blobs.
//! Regular captures show the scene under `ambient_level + regular_light`;
//! UV captures show it under `ambient_level` alone with each blob's emission
//! added on top (clamped). Every frame is viewed through its own camera
//! homography, blobs drift by their velocity per frame, and seeded Gaussian
//! sensor noise is added last.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::controller::{expected_light, ControllerConfig};
use crate::error::{Error, Result};
use crate::homography::Homography;
use crate::image::{quantize, Image};
use crate::ingest::{CaptureMode, ManifestEntry, StreamManifest};
use crate::io::{self, PaletteConfig};
use crate::par;
use crate::segmentation::DEFAULT_MIN_AREA;
use crate::types::{ClassPalette, ClassSpec, Frame, LabelMask, LightKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Background {
    Flat {
        level: u8,
    },
    Checkerboard {
        cell: f64,
        low: u8,
        high: u8,
    },
    /// Bilinearly interpolated value noise on a `cell`-pixel lattice.
    RandomTexture {
        cell: f64,
        low: u8,
        high: u8,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Ellipse {
        cx: f64,
        cy: f64,
        rx: f64,
        ry: f64,
        #[serde(default)]
        angle: f64,
    },
    Polygon {
        points: Vec<[f64; 2]>,
    },
}

impl Shape {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        match self {
            Shape::Ellipse {
                cx,
                cy,
                rx,
                ry,
                angle,
            } => {
                let (s, c) = angle.sin_cos();
                let (dx, dy) = (x - cx, y - cy);
                let u = c * dx + s * dy;
                let v = -s * dx + c * dy;
                (u / rx).powi(2) + (v / ry).powi(2) <= 1.0
            }
            Shape::Polygon { points } => {
                // Even-odd rule.
                let mut inside = false;
                let n = points.len();
                for i in 0..n {
                    let [xi, yi] = points[i];
                    let [xj, yj] = points[(i + n - 1) % n];
                    if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
                        inside = !inside;
                    }
                }
                inside
            }
        }
    }

    /// `(min_x, min_y, max_x, max_y)`.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        match self {
            Shape::Ellipse {
                cx,
                cy,
                rx,
                ry,
                angle,
            } => {
                let (s, c) = angle.sin_cos();
                let hx = ((rx * c).powi(2) + (ry * s).powi(2)).sqrt();
                let hy = ((rx * s).powi(2) + (ry * c).powi(2)).sqrt();
                (cx - hx, cy - hy, cx + hx, cy + hy)
            }
            Shape::Polygon { points } => points.iter().fold(
                (
                    f64::INFINITY,
                    f64::INFINITY,
                    f64::NEG_INFINITY,
                    f64::NEG_INFINITY,
                ),
                |b, p| (b.0.min(p[0]), b.1.min(p[1]), b.2.max(p[0]), b.3.max(p[1])),
            ),
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Shape::Ellipse { rx, ry, .. } => std::f64::consts::PI * rx * ry,
            Shape::Polygon { points } => {
                let n = points.len();
                let twice: f64 = (0..n)
                    .map(|i| {
                        let (a, b) = (points[i], points[(i + 1) % n]);
                        a[0] * b[1] - b[0] * a[1]
                    })
                    .sum();
                twice.abs() / 2.0
            }
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            Shape::Ellipse { rx, ry, .. } => {
                // Ramanujan's approximation.
                let (a, b) = (*rx, *ry);
                std::f64::consts::PI * (3.0 * (a + b) - ((3.0 * a + b) * (a + 3.0 * b)).sqrt())
            }
            Shape::Polygon { points } => {
                let n = points.len();
                (0..n)
                    .map(|i| {
                        let (a, b) = (points[i], points[(i + 1) % n]);
                        (a[0] - b[0]).hypot(a[1] - b[1])
                    })
                    .sum()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlobSpec {
    pub label: u8,
    pub emission: [u8; 3],
    pub shape: Shape,
    /// Drift in pixels per frame.
    #[serde(default)]
    pub velocity: [f64; 2],
    /// Visible-light color of the painted object; `None` leaves the
    /// background showing through (paint that is invisible in regular light).
    #[serde(default)]
    pub albedo: Option<[u8; 3]>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CameraMotion {
    /// Largest per-frame translation step, pixels.
    pub max_translation: f64,
    /// Largest per-frame rotation step about the image center, radians.
    pub max_rotation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub image_size: [usize; 2],
    pub background: Background,
    pub blobs: Vec<BlobSpec>,
    #[serde(default)]
    pub camera_motion: CameraMotion,
    pub uv_emission_gain: f64,
    pub ambient_level: u8,
    /// Extra light on regular captures only (the regular lamp in a dark room).
    #[serde(default)]
    pub regular_light: u8,
    #[serde(default)]
    pub noise_sigma: f64,
    #[serde(default = "default_rate")]
    pub camera_rate: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_rate() -> f64 {
    30.0
}

impl SceneSpec {
    pub fn width(&self) -> usize {
        self.image_size[0]
    }

    pub fn height(&self) -> usize {
        self.image_size[1]
    }

    pub fn capture_mode(&self) -> CaptureMode {
        if self.ambient_level == 0 {
            CaptureMode::Dark
        } else {
            CaptureMode::Ambient
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (w, h) = (self.width(), self.height());
        if w == 0 || h == 0 {
            return Err(Error::invalid("scene size must be positive"));
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(Error::invalid(
                "noise sigma must be finite and non-negative",
            ));
        }
        if !(0.0..=1.0).contains(&self.uv_emission_gain) {
            return Err(Error::invalid("UV emission gain must be in [0, 1]"));
        }
        if self.camera_rate.is_nan() || self.camera_rate <= 0.0 {
            return Err(Error::invalid("camera rate must be positive"));
        }
        let m = self.camera_motion;
        if !(m.max_translation >= 0.0 && m.max_rotation >= 0.0) {
            return Err(Error::invalid("camera motion bounds must be non-negative"));
        }
        match &self.background {
            Background::Checkerboard { cell, .. } | Background::RandomTexture { cell, .. }
                if cell.is_nan() || *cell <= 0.0 =>
            {
                return Err(Error::invalid("background cell size must be positive"));
            }
            _ => {}
        }
        for b in &self.blobs {
            if let Shape::Polygon { points } = &b.shape {
                if points.len() < 3 {
                    return Err(Error::invalid("polygons need at least three vertices"));
                }
            }
            let (x0, y0, x1, y1) = b.shape.bounds();
            if x0 < 0.0 || y0 < 0.0 || x1 > w as f64 || y1 > h as f64 {
                return Err(Error::invalid(format!(
                    "blob of class {} extends outside the {w}x{h} image at frame 0",
                    b.label
                )));
            }
        }
        self.palette(1).map(|_| ())
    }

    /// Palette of the blob classes, one threshold for all.
    pub fn palette(&self, threshold: u8) -> Result<ClassPalette> {
        let mut classes: Vec<ClassSpec> = Vec::new();
        for b in &self.blobs {
            match classes.iter().find(|c| c.label == b.label) {
                Some(c) if c.color != b.emission => {
                    return Err(Error::invalid(format!(
                        "class {} is given two emission colors",
                        b.label
                    )));
                }
                Some(_) => {}
                None => classes.push(ClassSpec {
                    label: b.label,
                    color: b.emission,
                    threshold,
                }),
            }
        }
        classes.sort_by_key(|c| c.label);
        ClassPalette::new(classes)
    }

    /// Palette with thresholds at a quarter of the weakest class's
    /// emitted brightness.
    pub fn suggested_palette(&self) -> Result<ClassPalette> {
        let weakest = self
            .blobs
            .iter()
            .map(|b| *b.emission.iter().max().unwrap_or(&0))
            .min()
            .unwrap_or(0) as f64;
        let t = (0.25 * self.uv_emission_gain * weakest)
            .round()
            .clamp(1.0, 255.0) as u8;
        self.palette(t)
    }
}

/// A rendered stream with its ground truth.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthStream {
    pub frames: Vec<Frame>,
    /// One mask per (regular, UV) pair, in the regular frame's coordinates.
    pub truth: Vec<LabelMask>,
    /// Per-frame camera homography (world plane → frame pixels).
    pub camera: Vec<Homography>,
}

impl SynthStream {
    /// True UV→regular registration of pair `i`.
    pub fn pair_alignment(&self, i: usize) -> Result<Homography> {
        let (reg, uv) = (&self.camera[2 * i], &self.camera[2 * i + 1]);
        reg.compose(&uv.inverse()?)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn lattice_value(seed: u64, i: i64, j: i64) -> f64 {
    let h = splitmix64(
        seed ^ splitmix64((i as u64).wrapping_mul(0x1000_0000_01B3) ^ (j as u64).rotate_left(32)),
    );
    (h >> 11) as f64 / (1u64 << 53) as f64
}

fn background_albedo(bg: &Background, seed: u64, x: f64, y: f64) -> f64 {
    match *bg {
        Background::Flat { level } => level as f64,
        Background::Checkerboard { cell, low, high } => {
            let parity = ((x / cell).floor() as i64 + (y / cell).floor() as i64).rem_euclid(2);
            if parity == 0 {
                low as f64
            } else {
                high as f64
            }
        }
        Background::RandomTexture { cell, low, high } => {
            let (u, v) = (x / cell, y / cell);
            let (i, j) = (u.floor() as i64, v.floor() as i64);
            let (fu, fv) = (u - i as f64, v - j as f64);
            let a = lattice_value(seed, i, j);
            let b = lattice_value(seed, i + 1, j);
            let c = lattice_value(seed, i, j + 1);
            let d = lattice_value(seed, i + 1, j + 1);
            let t = a + (b - a) * fu + (c - a) * fv + (a - b - c + d) * fu * fv;
            low as f64 + (high as f64 - low as f64) * t
        }
    }
}

/// Topmost blob (last in the list) covering world point `(x, y)` at `frame`.
fn blob_at(spec: &SceneSpec, frame: usize, x: f64, y: f64) -> Option<&BlobSpec> {
    spec.blobs.iter().rev().find(|b| {
        let t = frame as f64;
        b.shape
            .contains(x - b.velocity[0] * t, y - b.velocity[1] * t)
    })
}

fn camera_walk(spec: &SceneSpec, n_frames: usize) -> Vec<Homography> {
    let m = spec.camera_motion;
    if m.max_translation == 0.0 && m.max_rotation == 0.0 {
        return vec![Homography::identity(); n_frames];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(0);
    let (cx, cy) = (
        (spec.width() - 1) as f64 / 2.0,
        (spec.height() - 1) as f64 / 2.0,
    );
    let (mut tx, mut ty, mut theta) = (0.0f64, 0.0f64, 0.0f64);
    let mut out = Vec::with_capacity(n_frames);
    for k in 0..n_frames {
        if k > 0 {
            // Mean-reverting steps keep the view near the scene while each
            // step stays within the per-frame bounds.
            let jitter = |rng: &mut ChaCha8Rng, bound: f64| {
                if bound > 0.0 {
                    rng.random_range(-bound..=bound)
                } else {
                    0.0
                }
            };
            let mut sx = -0.5 * tx + jitter(&mut rng, m.max_translation);
            let mut sy = -0.5 * ty + jitter(&mut rng, m.max_translation);
            let norm = sx.hypot(sy);
            if norm > m.max_translation {
                let s = if norm > 0.0 {
                    m.max_translation / norm
                } else {
                    0.0
                };
                sx *= s;
                sy *= s;
            }
            let sr = (-0.5 * theta + jitter(&mut rng, m.max_rotation))
                .clamp(-m.max_rotation, m.max_rotation);
            tx += sx;
            ty += sy;
            theta += sr;
        }
        out.push(Homography::rigid_about(cx, cy, theta, tx, ty));
    }
    out
}

fn render_frame(spec: &SceneSpec, k: usize, camera: &Homography) -> Result<Frame> {
    let (w, h) = (spec.width(), spec.height());
    let inv = camera.inverse()?;
    let kind = expected_light(&ControllerConfig::default(), k as u64);
    let light = spec.ambient_level as f64
        + if kind == LightKind::Regular {
            spec.regular_light as f64
        } else {
            0.0
        };
    let light = light.min(255.0) / 255.0;
    let to_world = |x: f64, y: f64| inv.apply(x, y).unwrap_or((f64::NAN, f64::NAN));

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(k as u64 + 1);
    let noise = (spec.noise_sigma > 0.0)
        .then(|| Normal::new(0.0, spec.noise_sigma).expect("sigma validated"));

    let mut data = Vec::with_capacity(w * h * 3);
    for y in 0..h {
        for x in 0..w {
            let (xf, yf) = (x as f64, y as f64);
            let (px, py) = to_world(xf, yf);
            let blob = blob_at(spec, k, px, py);
            let albedo = match blob.and_then(|b| b.albedo) {
                Some(a) => a.map(|v| v as f64),
                None => {
                    let mut acc = 0.0;
                    for (ox, oy) in [(-0.25, -0.25), (0.25, -0.25), (-0.25, 0.25), (0.25, 0.25)] {
                        let (sx, sy) = to_world(xf + ox, yf + oy);
                        acc += background_albedo(&spec.background, spec.seed, sx, sy);
                    }
                    [acc / 4.0; 3]
                }
            };
            for (c, a) in albedo.iter().enumerate() {
                let mut v = a * light;
                if kind == LightKind::Uv {
                    if let Some(b) = blob {
                        v = (v + b.emission[c] as f64 * spec.uv_emission_gain).min(255.0);
                    }
                }
                if let Some(n) = &noise {
                    v += n.sample(&mut rng);
                }
                data.push(quantize(v));
            }
        }
    }
    let t_ms = (k as f64 * 1000.0 / spec.camera_rate).floor() as u64;
    Frame::new(Image::new(w, h, 3, data)?, kind, k as u64, t_ms)
}

fn truth_mask(spec: &SceneSpec, k: usize, camera: &Homography) -> Result<LabelMask> {
    let (w, h) = (spec.width(), spec.height());
    let inv = camera.inverse()?;
    let mut mask = LabelMask::zeros(w, h);
    for y in 0..h {
        for x in 0..w {
            if let Some((px, py)) = inv.apply(x as f64, y as f64) {
                if let Some(b) = blob_at(spec, k, px, py) {
                    mask.set(x, y, b.label);
                }
            }
        }
    }
    Ok(mask)
}

/// Renders `n_frames` alternating captures (regular first) plus per-pair
/// ground-truth masks and per-frame camera homographies.
pub fn generate_stream(spec: &SceneSpec, n_frames: usize) -> Result<SynthStream> {
    spec.validate()?;
    if n_frames < 2 {
        return Err(Error::invalid("a stream needs at least two frames"));
    }
    let camera = camera_walk(spec, n_frames);
    let frames = par::map_range(n_frames, |k| render_frame(spec, k, &camera[k]))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let truth = par::map_range(n_frames / 2, |i| truth_mask(spec, 2 * i, &camera[2 * i]))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SynthStream {
        frames,
        truth,
        camera,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruthSidecar {
    /// Per-frame camera homographies.
    pub camera: Vec<Homography>,
    /// Per-pair UV→regular homographies.
    pub pair_alignment: Vec<Homography>,
    /// Per-pair mask paths relative to the output directory.
    pub masks: Vec<PathBuf>,
}

/// Writes a stream in the ingest format (`manifest.json` + `frames/`) plus
/// `truth/` masks, `truth/truth.json` and a suggested `palette.json`.
pub fn write_stream(
    out_dir: &Path,
    spec: &SceneSpec,
    stream: &SynthStream,
) -> Result<StreamManifest> {
    fs::create_dir_all(out_dir.join("frames"))?;
    fs::create_dir_all(out_dir.join("truth"))?;
    let mut entries = Vec::with_capacity(stream.frames.len());
    for f in &stream.frames {
        let rel = PathBuf::from("frames").join(format!("frame_{:04}.png", f.seq));
        io::write_png(&out_dir.join(&rel), &f.image)?;
        entries.push(ManifestEntry {
            path: rel,
            kind: f.kind,
            seq: f.seq,
            t_ms: f.timestamp_ms,
        });
    }
    let manifest = StreamManifest {
        mode: spec.capture_mode(),
        width: spec.width(),
        height: spec.height(),
        frames: entries,
    };
    manifest.save(&out_dir.join("manifest.json"))?;

    let mut masks = Vec::with_capacity(stream.truth.len());
    for (i, m) in stream.truth.iter().enumerate() {
        let rel = PathBuf::from("truth").join(format!("pair_{i:04}.png"));
        io::write_mask_png(&out_dir.join(&rel), m)?;
        masks.push(rel);
    }
    let pair_alignment = (0..stream.truth.len())
        .map(|i| stream.pair_alignment(i))
        .collect::<Result<Vec<_>>>()?;
    io::write_json(
        &out_dir.join("truth").join("truth.json"),
        &TruthSidecar {
            camera: stream.camera.clone(),
            pair_alignment,
            masks,
        },
    )?;
    io::write_json(
        &out_dir.join("palette.json"),
        &PaletteConfig {
            classes: spec.suggested_palette()?,
            min_area: DEFAULT_MIN_AREA,
        },
    )?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dark_spec() -> SceneSpec {
        SceneSpec {
            image_size: [64, 48],
            background: Background::Flat { level: 200 },
            blobs: vec![BlobSpec {
                label: 1,
                emission: [255, 0, 0],
                shape: Shape::Ellipse {
                    cx: 30.0,
                    cy: 20.0,
                    rx: 10.0,
                    ry: 6.0,
                    angle: 0.3,
                },
                velocity: [0.0, 0.0],
                albedo: None,
            }],
            camera_motion: CameraMotion::default(),
            uv_emission_gain: 1.0,
            ambient_level: 0,
            regular_light: 0,
            noise_sigma: 0.0,
            camera_rate: 30.0,
            seed: 5,
        }
    }

    #[test]
    fn dark_scene_renders_emission_only() {
        let spec = dark_spec();
        let s = generate_stream(&spec, 4).unwrap();
        assert_eq!(s.frames.len(), 4);
        assert_eq!(s.truth.len(), 2);
        let (reg, uv) = (&s.frames[0], &s.frames[1]);
        assert_eq!((reg.kind, uv.kind), (LightKind::Regular, LightKind::Uv));
        assert!(reg.image.data().iter().all(|&v| v == 0));
        for y in 0..48 {
            for x in 0..64 {
                let inside = spec.blobs[0].shape.contains(x as f64, y as f64);
                assert_eq!(
                    uv.image.rgb(x, y),
                    if inside { [255, 0, 0] } else { [0, 0, 0] }
                );
                assert_eq!(s.truth[0].get(x, y), inside as u8);
            }
        }
        assert!(s.camera.iter().all(|h| *h == Homography::identity()));
    }

    #[test]
    fn zero_gain_ambient_frames_match() {
        let mut spec = dark_spec();
        spec.ambient_level = 120;
        spec.uv_emission_gain = 0.0;
        spec.background = Background::RandomTexture {
            cell: 6.0,
            low: 0,
            high: 255,
        };
        let s = generate_stream(&spec, 2).unwrap();
        assert_eq!(s.frames[0].image, s.frames[1].image);
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let mut spec = dark_spec();
        spec.noise_sigma = 3.0;
        spec.ambient_level = 90;
        spec.camera_motion = CameraMotion {
            max_translation: 5.0,
            max_rotation: 0.02,
        };
        spec.background = Background::RandomTexture {
            cell: 8.0,
            low: 10,
            high: 240,
        };
        assert_eq!(
            generate_stream(&spec, 6).unwrap(),
            generate_stream(&spec, 6).unwrap()
        );
        let mut other = spec.clone();
        other.seed += 1;
        assert_ne!(
            generate_stream(&spec, 6).unwrap().frames,
            generate_stream(&other, 6).unwrap().frames
        );
    }

    #[test]
    fn truth_area_is_within_perimeter_of_analytic_area() {
        let mut spec = dark_spec();
        spec.blobs.push(BlobSpec {
            label: 2,
            emission: [0, 255, 0],
            shape: Shape::Polygon {
                points: vec![[45.0, 30.0], [60.0, 32.0], [55.0, 45.0], [44.0, 41.0]],
            },
            velocity: [0.0, 0.0],
            albedo: None,
        });
        let s = generate_stream(&spec, 2).unwrap();
        for b in &spec.blobs {
            let count = s.truth[0].count(b.label) as f64;
            assert!(
                (count - b.shape.area()).abs() <= b.shape.perimeter(),
                "class {}",
                b.label
            );
        }
    }

    #[test]
    fn noise_does_not_touch_truth() {
        let mut spec = dark_spec();
        let quiet = generate_stream(&spec, 4).unwrap();
        spec.noise_sigma = 8.0;
        let noisy = generate_stream(&spec, 4).unwrap();
        assert_eq!(quiet.truth, noisy.truth);
        assert_ne!(quiet.frames, noisy.frames);
    }

    #[test]
    fn camera_steps_stay_bounded() {
        let mut spec = dark_spec();
        spec.blobs.clear();
        spec.camera_motion = CameraMotion {
            max_translation: 8.0,
            max_rotation: 0.0,
        };
        let s = generate_stream(&spec, 30).unwrap();
        for i in 0..15 {
            let h = s.pair_alignment(i).unwrap();
            let (x, y) = h.apply(0.0, 0.0).unwrap();
            assert!(x.hypot(y) <= 8.0 + 1e-9);
        }
        assert!(s.camera.iter().any(|h| *h != Homography::identity()));
    }

    #[test]
    fn validation() {
        let mut spec = dark_spec();
        spec.blobs[0].shape = Shape::Ellipse {
            cx: 2.0,
            cy: 20.0,
            rx: 10.0,
            ry: 6.0,
            angle: 0.0,
        };
        assert!(generate_stream(&spec, 2).is_err());
        let mut spec = dark_spec();
        spec.noise_sigma = -1.0;
        assert!(generate_stream(&spec, 2).is_err());
        assert!(generate_stream(&dark_spec(), 1).is_err());
        let mut spec = dark_spec();
        let mut b = spec.blobs[0].clone();
        b.emission = [0, 0, 255];
        spec.blobs.push(b);
        assert!(generate_stream(&spec, 2).is_err());
    }

    #[test]
    fn blobs_drift_and_clip() {
        let mut spec = dark_spec();
        spec.blobs[0].velocity = [10.0, 0.0];
        let s = generate_stream(&spec, 10).unwrap();
        // By frame 8 the blob has moved 80 px and left the 64 px frame.
        assert!(s.truth[4].labels().iter().all(|&l| l == 0));
        assert!(s.truth[0].count(1) > 0);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = dark_spec();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"kind\":\"ellipse\""));
        let back: SceneSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }
}
