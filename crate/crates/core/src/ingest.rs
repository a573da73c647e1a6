//! Frame-stream loading and (regular, UV) pairing.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io;
use crate::par;
use crate::types::{Frame, FramePair, LightKind};

/// Capture regime recorded in a stream manifest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaptureMode {
    Dark,
    Ambient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Image path, relative to the manifest's directory unless absolute.
    pub path: PathBuf,
    pub kind: LightKind,
    pub seq: u64,
    pub t_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamManifest {
    pub mode: CaptureMode,
    pub width: usize,
    pub height: usize,
    pub frames: Vec<ManifestEntry>,
}

impl StreamManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let mut m: StreamManifest =
            serde_json::from_str(text).map_err(|e| Error::MalformedManifest(e.to_string()))?;
        if m.width == 0 || m.height == 0 {
            return Err(Error::MalformedManifest(
                "image size must be positive".into(),
            ));
        }
        m.frames.sort_by_key(|e| e.seq);
        if let Some(w) = m.frames.windows(2).find(|w| w[0].seq == w[1].seq) {
            return Err(Error::MalformedManifest(format!(
                "duplicate seq {}",
                w[0].seq
            )));
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        if !path.is_file() {
            return Err(Error::MissingFile(path.to_path_buf()));
        }
        StreamManifest::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        io::write_json(path, self)
    }
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Loads a manifest and decodes its frames (in parallel when enabled),
/// returning frames in seq order.
pub fn load_stream(manifest_path: &Path) -> Result<(StreamManifest, Vec<Frame>)> {
    let manifest = StreamManifest::load(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    for e in &manifest.frames {
        let p = resolve(base, &e.path);
        if !p.is_file() {
            return Err(Error::MissingFile(p));
        }
    }
    let expected = (manifest.width, manifest.height);
    let decoded = par::map(&manifest.frames, |e| -> Result<Frame> {
        let p = resolve(base, &e.path);
        let img = io::read_rgb_png(&p)?;
        if img.dims() != expected {
            return Err(Error::DimensionMismatch {
                path: p,
                expected,
                found: img.dims(),
            });
        }
        Frame::new(img, e.kind, e.seq, e.t_ms)
    });
    let frames = decoded.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((manifest, frames))
}

/// Groups consecutive captures into (regular, UV) pairs.
///
/// Frames are taken two at a time in seq order; each pair is oriented
/// (regular, UV) whichever came first. A trailing unpaired frame is dropped
/// with a warning.
pub fn pair_stream(frames: &[Frame]) -> Result<Vec<FramePair>> {
    for w in frames.windows(2) {
        if w[1].seq <= w[0].seq {
            return Err(Error::invalid(format!(
                "frames must be sorted by strictly increasing seq ({} follows {})",
                w[1].seq, w[0].seq
            )));
        }
        if w[1].kind == w[0].kind {
            return Err(Error::AlternationViolation { seq: w[1].seq });
        }
    }
    let mut pairs = Vec::with_capacity(frames.len() / 2);
    for chunk in frames.chunks_exact(2) {
        let (a, b) = (&chunk[0], &chunk[1]);
        let (regular, uv) = match a.kind {
            LightKind::Regular => (a, b),
            LightKind::Uv => (b, a),
        };
        pairs.push(FramePair::new(regular.clone(), uv.clone())?);
    }
    if frames.len() % 2 == 1 {
        let last = &frames[frames.len() - 1];
        log::warn!("dropping trailing unpaired frame seq {}", last.seq);
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::Image;

    fn frame(kind: LightKind, seq: u64) -> Frame {
        Frame::new(
            Image::filled(2, 2, 3, seq as u8).unwrap(),
            kind,
            seq,
            seq * 33,
        )
        .unwrap()
    }

    fn alternating(n: u64) -> Vec<Frame> {
        (0..n)
            .map(|s| {
                frame(
                    if s % 2 == 0 {
                        LightKind::Regular
                    } else {
                        LightKind::Uv
                    },
                    s,
                )
            })
            .collect()
    }

    #[test]
    fn thirty_frames_make_fifteen_pairs() {
        let pairs = pair_stream(&alternating(30)).unwrap();
        assert_eq!(pairs.len(), 15);
        for (i, p) in pairs.iter().enumerate() {
            assert_eq!(p.regular().seq, 2 * i as u64);
            assert_eq!(p.uv().seq, 2 * i as u64 + 1);
        }
    }

    #[test]
    fn lone_and_empty_streams() {
        assert!(pair_stream(&[]).unwrap().is_empty());
        assert!(pair_stream(&[frame(LightKind::Regular, 0)])
            .unwrap()
            .is_empty());
        assert_eq!(pair_stream(&alternating(5)).unwrap().len(), 2);
    }

    #[test]
    fn violation_names_second_duplicate() {
        let frames = vec![
            frame(LightKind::Regular, 10),
            frame(LightKind::Uv, 11),
            frame(LightKind::Uv, 12),
            frame(LightKind::Regular, 13),
        ];
        match pair_stream(&frames) {
            Err(Error::AlternationViolation { seq }) => assert_eq!(seq, 12),
            other => panic!("expected alternation violation, got {other:?}"),
        }
    }

    #[test]
    fn uv_first_pairs_are_reoriented() {
        let frames = vec![frame(LightKind::Uv, 0), frame(LightKind::Regular, 1)];
        let pairs = pair_stream(&frames).unwrap();
        assert_eq!(pairs[0].regular().seq, 1);
        assert_eq!(pairs[0].uv().seq, 0);
    }

    #[test]
    fn malformed_manifest_is_reported() {
        assert!(matches!(
            StreamManifest::parse("{"),
            Err(Error::MalformedManifest(_))
        ));
        assert!(matches!(
            StreamManifest::parse(r#"{"mode": "dusk", "width": 1, "height": 1, "frames": []}"#),
            Err(Error::MalformedManifest(_))
        ));
    }
}
