use crate::types::LabelMask;

/// 4-connected components of equal nonzero label, each as a list of pixel
/// indices.
pub fn connected_components(mask: &LabelMask) -> Vec<(u8, Vec<usize>)> {
    let (w, h) = mask.dims();
    let labels = mask.labels();
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..w * h {
        let label = labels[start];
        if label == 0 || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut pixels = Vec::new();
        while let Some(i) = stack.pop() {
            pixels.push(i);
            let (x, y) = (i % w, i / w);
            let mut visit = |j: usize| {
                if !seen[j] && labels[j] == label {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if x > 0 {
                visit(i - 1);
            }
            if x + 1 < w {
                visit(i + 1);
            }
            if y > 0 {
                visit(i - w);
            }
            if y + 1 < h {
                visit(i + w);
            }
        }
        out.push((label, pixels));
    }
    out
}

/// Clears every 4-connected single-label component smaller than
/// `min_area` pixels. `min_area == 0` returns the mask unchanged.
pub fn postprocess(mask: &LabelMask, min_area: usize) -> LabelMask {
    let mut out = mask.clone();
    if min_area == 0 {
        return out;
    }
    let labels = out.labels_mut();
    for (_, pixels) in connected_components(mask) {
        if pixels.len() < min_area {
            for i in pixels {
                labels[i] = 0;
            }
        }
    }
    out
}
