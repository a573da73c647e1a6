//! Domain types for captured frames, frame pairs, label masks and the
//! fluorescent class palette.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homography::Homography;
use crate::image::Image;

/// Which light source illuminated a capture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LightKind {
    Regular,
    #[serde(rename = "uv")]
    Uv,
}

impl LightKind {
    pub fn other(self) -> LightKind {
        match self {
            LightKind::Regular => LightKind::Uv,
            LightKind::Uv => LightKind::Regular,
        }
    }
}

/// One captured RGB image with its lighting tag, sequence index and
/// timestamp (milliseconds since the start of the stream).
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub image: Image,
    pub kind: LightKind,
    pub seq: u64,
    pub timestamp_ms: u64,
}

impl Frame {
    pub fn new(image: Image, kind: LightKind, seq: u64, timestamp_ms: u64) -> Result<Self> {
        if image.channels() != 3 {
            return Err(Error::invalid("frames hold 3-channel RGB images"));
        }
        Ok(Frame {
            image,
            kind,
            seq,
            timestamp_ms,
        })
    }
}

/// Per-pixel flag telling whether a warped sample came from inside the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityMask {
    width: usize,
    height: usize,
    valid: Vec<bool>,
}

impl ValidityMask {
    pub fn all_valid(width: usize, height: usize) -> Self {
        ValidityMask {
            width,
            height,
            valid: vec![true; width * height],
        }
    }

    pub(crate) fn from_vec(width: usize, height: usize, valid: Vec<bool>) -> Self {
        debug_assert_eq!(valid.len(), width * height);
        ValidityMask {
            width,
            height,
            valid,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn is_valid(&self, x: usize, y: usize) -> bool {
        self.valid[y * self.width + x]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.valid
    }

    pub fn count_valid(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }
}

/// Outcome of registering the UV capture of a pair onto its regular capture.
#[derive(Clone, Debug, PartialEq)]
pub struct Alignment {
    /// Maps UV-frame pixel coordinates onto regular-frame coordinates.
    pub homography: Homography,
    /// Validity of the warped UV image; `None` means every pixel is valid.
    pub valid: Option<ValidityMask>,
    pub inliers: usize,
    /// Set when estimation failed and the identity fallback was used.
    pub failed: bool,
}

impl Alignment {
    /// Static-camera assumption: identity, nothing estimated.
    pub fn identity() -> Self {
        Alignment {
            homography: Homography::identity(),
            valid: None,
            inliers: 0,
            failed: false,
        }
    }
}

/// Adjacent (regular, UV) captures forming one annotation sample.
#[derive(Clone, Debug, PartialEq)]
pub struct FramePair {
    regular: Frame,
    uv: Frame,
    alignment: Option<Alignment>,
}

impl FramePair {
    pub fn new(regular: Frame, uv: Frame) -> Result<Self> {
        if regular.kind != LightKind::Regular || uv.kind != LightKind::Uv {
            return Err(Error::invalid(format!(
                "pair must be (regular, uv), got ({:?}, {:?})",
                regular.kind, uv.kind
            )));
        }
        if regular.seq.abs_diff(uv.seq) != 1 {
            return Err(Error::invalid(format!(
                "paired frames must be adjacent captures, got seq {} and {}",
                regular.seq, uv.seq
            )));
        }
        if regular.image.dims() != uv.image.dims() {
            return Err(Error::invalid(format!(
                "paired frames differ in size: {:?} vs {:?}",
                regular.image.dims(),
                uv.image.dims()
            )));
        }
        Ok(FramePair {
            regular,
            uv,
            alignment: None,
        })
    }

    pub fn regular(&self) -> &Frame {
        &self.regular
    }

    pub fn uv(&self) -> &Frame {
        &self.uv
    }

    pub fn alignment(&self) -> Option<&Alignment> {
        self.alignment.as_ref()
    }

    /// Replaces the UV image by its registered version and records the alignment.
    pub fn with_alignment(mut self, uv_image: Image, alignment: Alignment) -> Result<Self> {
        if uv_image.dims() != self.regular.image.dims() || uv_image.channels() != 3 {
            return Err(Error::invalid(
                "aligned UV image must match the regular frame",
            ));
        }
        if let Some(v) = &alignment.valid {
            if v.dims() != uv_image.dims() {
                return Err(Error::invalid("validity mask must match the image size"));
            }
        }
        self.uv.image = uv_image;
        self.alignment = Some(alignment);
        Ok(self)
    }

    /// Records an alignment without touching the UV image (identity or fallback).
    pub fn with_identity_alignment(mut self, failed: bool, inliers: usize) -> Self {
        self.alignment = Some(Alignment {
            failed,
            inliers,
            ..Alignment::identity()
        });
        self
    }
}

/// Per-pixel class labels, row-major; 0 is background.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMask {
    width: usize,
    height: usize,
    labels: Vec<u8>,
}

impl LabelMask {
    pub fn new(width: usize, height: usize, labels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || labels.len() != width * height {
            return Err(Error::invalid(format!(
                "label mask {width}x{height} cannot hold {} labels",
                labels.len()
            )));
        }
        Ok(LabelMask {
            width,
            height,
            labels,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        LabelMask {
            width,
            height,
            labels: vec![0; width * height],
        }
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
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.labels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, label: u8) {
        self.labels[y * self.width + x] = label;
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn labels_mut(&mut self) -> &mut [u8] {
        &mut self.labels
    }

    pub fn count(&self, label: u8) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Distinct nonzero labels, ascending.
    pub fn present_labels(&self) -> Vec<u8> {
        let mut seen = [false; 256];
        for &l in &self.labels {
            seen[l as usize] = true;
        }
        (1..=255u8).filter(|&l| seen[l as usize]).collect()
    }

    /// Checks that every nonzero label belongs to `palette`.
    pub fn validate_against(&self, palette: &ClassPalette) -> Result<()> {
        match self
            .present_labels()
            .into_iter()
            .find(|&l| palette.get(l).is_none())
        {
            Some(l) => Err(Error::invalid(format!("label {l} is not in the palette"))),
            None => Ok(()),
        }
    }
}

/// One fluorescent class: label id, emission color and detection threshold
/// applied to a pixel's brightest channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub label: u8,
    pub color: [u8; 3],
    pub threshold: u8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ClassSpec>", into = "Vec<ClassSpec>")]
pub struct ClassPalette {
    classes: Vec<ClassSpec>,
}

impl ClassPalette {
    pub fn new(classes: Vec<ClassSpec>) -> Result<Self> {
        for (i, c) in classes.iter().enumerate() {
            if c.label == 0 {
                return Err(Error::invalid("class label 0 is reserved for background"));
            }
            if c.color == [0, 0, 0] {
                return Err(Error::invalid(format!(
                    "class {} has a black emission color",
                    c.label
                )));
            }
            for d in &classes[..i] {
                if d.label == c.label {
                    return Err(Error::invalid(format!("duplicate class label {}", c.label)));
                }
                if d.color == c.color {
                    return Err(Error::invalid(format!(
                        "classes {} and {} share emission color {:?}",
                        d.label, c.label, c.color
                    )));
                }
            }
        }
        Ok(ClassPalette { classes })
    }

    pub fn classes(&self) -> &[ClassSpec] {
        &self.classes
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, label: u8) -> Option<&ClassSpec> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// Copy of the palette with one class's threshold replaced.
    pub fn with_threshold(&self, label: u8, threshold: u8) -> Result<Self> {
        let mut out = self.clone();
        let class = out
            .classes
            .iter_mut()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::invalid(format!("label {label} is not in the palette")))?;
        class.threshold = threshold;
        Ok(out)
    }
}

impl TryFrom<Vec<ClassSpec>> for ClassPalette {
    type Error = Error;

    fn try_from(v: Vec<ClassSpec>) -> Result<Self> {
        ClassPalette::new(v)
    }
}

impl From<ClassPalette> for Vec<ClassSpec> {
    fn from(p: ClassPalette) -> Self {
        p.classes
    }
}
