//! PNG and JSON file helpers.

use std::fs;
use std::path::Path;

use ::image::{GrayImage, ImageReader, RgbImage};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::Image;
use crate::segmentation::DEFAULT_MIN_AREA;
use crate::types::{ClassPalette, LabelMask};

fn ensure_exists(path: &Path) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::MissingFile(path.to_path_buf()))
    }
}

/// Decodes any supported PNG into 8-bit RGB.
pub fn read_rgb_png(path: &Path) -> Result<Image> {
    ensure_exists(path)?;
    let rgb = ImageReader::open(path)?
        .with_guessed_format()?
        .decode()?
        .to_rgb8();
    let (w, h) = rgb.dimensions();
    Image::new(w as usize, h as usize, 3, rgb.into_raw())
}

pub fn write_png(path: &Path, img: &Image) -> Result<()> {
    let (w, h) = (img.width() as u32, img.height() as u32);
    let data = img.data().to_vec();
    match img.channels() {
        1 => GrayImage::from_raw(w, h, data)
            .expect("buffer sized by Image")
            .save(path)?,
        _ => RgbImage::from_raw(w, h, data)
            .expect("buffer sized by Image")
            .save(path)?,
    }
    Ok(())
}

/// Writes a label mask as an 8-bit single-channel PNG holding label values.
pub fn write_mask_png(path: &Path, mask: &LabelMask) -> Result<()> {
    GrayImage::from_raw(
        mask.width() as u32,
        mask.height() as u32,
        mask.labels().to_vec(),
    )
    .expect("buffer sized by LabelMask")
    .save(path)?;
    Ok(())
}

pub fn read_mask_png(path: &Path) -> Result<LabelMask> {
    ensure_exists(path)?;
    let img = ImageReader::open(path)?.with_guessed_format()?.decode()?;
    if img.color().channel_count() != 1 {
        return Err(Error::invalid(format!(
            "{} is not a single-channel label mask",
            path.display()
        )));
    }
    let gray = img.to_luma8();
    let (w, h) = gray.dimensions();
    LabelMask::new(w as usize, h as usize, gray.into_raw())
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    ensure_exists(path)?;
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Palette configuration file:
/// `{"classes": [{"label", "color": [r,g,b], "threshold"}], "min_area": int}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaletteConfig {
    pub classes: ClassPalette,
    #[serde(default = "default_min_area")]
    pub min_area: usize,
}

fn default_min_area() -> usize {
    DEFAULT_MIN_AREA
}

impl PaletteConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let cfg: PaletteConfig = read_json(path)?;
        if cfg.classes.is_empty() {
            return Err(Error::invalid("palette has no classes"));
        }
        Ok(cfg)
    }
}
