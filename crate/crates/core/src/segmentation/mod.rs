//! Label-mask extraction for both capture regimes, small-component cleanup,
//! and whole-stream annotation.
//!
//! Thresholds apply to a pixel's brightest channel (of the UV capture in the
//! dark room, of the pair difference under ambient light). Classes are told
//! apart by chroma: the pixel color divided by its brightest channel is
//! compared with each class's emission color normalized the same way.

mod annotate;
mod classify;
mod components;

pub use annotate::{
    annotate_frames, annotate_pairs, annotate_stream, overlay, write_dataset, AlignmentStatus,
    AnnotateConfig, AnnotatedSample, Dataset, DatasetManifest, SampleRecord, ASSUMPTIONS,
};
pub use classify::{ambient_mode_mask, classify_image, classify_pixel, dark_mode_mask};
pub use components::{connected_components, postprocess};

/// Smallest region kept by default, in pixels at the 160×120 working size.
pub const DEFAULT_MIN_AREA: usize = 4;
