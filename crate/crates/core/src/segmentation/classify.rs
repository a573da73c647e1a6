use crate::error::{Error, Result};
use crate::image::{absdiff, Image};
use crate::par;
use crate::types::{ClassPalette, Frame, FramePair, LabelMask, LightKind, ValidityMask};

fn chroma(rgb: [u8; 3]) -> Option<[f64; 3]> {
    let m = *rgb.iter().max().expect("three channels");
    (m > 0).then(|| rgb.map(|v| v as f64 / m as f64))
}

/// Nearest-chroma class label of one pixel, 0 when no class applies.
///
/// The pixel's RGB is divided by its brightest channel; among the classes
/// whose threshold that channel reaches, the one whose likewise-normalized
/// emission color is closest (Euclidean) wins. Ties go to the lowest label.
pub fn classify_pixel(rgb: [u8; 3], palette: &ClassPalette) -> u8 {
    let brightness = *rgb.iter().max().expect("three channels");
    let Some(c) = chroma(rgb) else {
        return 0;
    };
    let mut best: Option<(f64, u8)> = None;
    for class in palette.classes() {
        if brightness < class.threshold {
            continue;
        }
        let e = chroma(class.color).expect("palette colors are nonzero");
        let d2: f64 = (0..3).map(|i| (c[i] - e[i]).powi(2)).sum();
        let better = match best {
            None => true,
            Some((bd, bl)) => d2 < bd || (d2 == bd && class.label < bl),
        };
        if better {
            best = Some((d2, class.label));
        }
    }
    best.map_or(0, |(_, l)| l)
}

/// Classifies every pixel of an RGB image; pixels flagged invalid stay 0.
pub fn classify_image(
    img: &Image,
    palette: &ClassPalette,
    valid: Option<&ValidityMask>,
) -> LabelMask {
    let (w, h) = img.dims();
    let mut labels = vec![0u8; w * h];
    par::for_each_row(&mut labels, w, |y, row| {
        for (x, l) in row.iter_mut().enumerate() {
            if valid.is_none_or(|v| v.is_valid(x, y)) {
                *l = classify_pixel(img.rgb(x, y), palette);
            }
        }
    });
    LabelMask::new(w, h, labels).expect("sized from image")
}

/// Dark-room regime: threshold and classify the UV capture directly.
pub fn dark_mode_mask(uv: &Frame, palette: &ClassPalette) -> Result<LabelMask> {
    if palette.is_empty() {
        return Err(Error::invalid("palette has no classes"));
    }
    if uv.kind != LightKind::Uv {
        return Err(Error::PreconditionViolation(format!(
            "dark-mode mask needs a UV frame, seq {} is {:?}",
            uv.seq, uv.kind
        )));
    }
    Ok(classify_image(&uv.image, palette, None))
}

/// Ambient regime: classify `|regular - uv|` of an aligned pair, restricted
/// to the warp's valid region.
pub fn ambient_mode_mask(pair: &FramePair, palette: &ClassPalette) -> Result<LabelMask> {
    if palette.is_empty() {
        return Err(Error::invalid("palette has no classes"));
    }
    let alignment = pair.alignment().ok_or_else(|| {
        Error::PreconditionViolation(format!(
            "pair (seq {}, {}) has no alignment; align it or mark it static",
            pair.regular().seq,
            pair.uv().seq
        ))
    })?;
    let diff = absdiff(&pair.regular().image, &pair.uv().image)?;
    Ok(classify_image(&diff, palette, alignment.valid.as_ref()))
}
