//! Turn interleaved regular-light / UV-light captures of objects painted with
//! fluorescent markers into pixel-accurate segmentation-mask datasets.
//!
//! The pipeline stages map onto modules:
//!
//! - [`controller`] simulates the trigger/lighting board that alternates the
//!   light sources once per camera trigger.
//! - [`ingest`] loads a frame stream and pairs adjacent (regular, UV) captures.
//! - [`features`] and [`registration`] align the UV capture onto the regular
//!   capture when the camera moves (FAST/BRIEF, brute-force matching,
//!   RANSAC homography, inverse warp).
//! - [`segmentation`] extracts label masks, either by thresholding the UV
//!   capture (dark room) or the difference of the pair (ambient light).
//! - [`synth`] renders synthetic streams with planted ground truth.
//! - [`eval`] computes IoU agreement statistics.
//!
//! With the default `parallel` feature, batch loops run on rayon; without it
//! every loop runs sequentially and produces identical results.

pub mod cli;
pub mod controller;
pub mod error;
pub mod eval;
pub mod features;
pub mod homography;
pub mod image;
pub mod ingest;
pub mod io;
mod par;
pub mod registration;
pub mod segmentation;
pub mod synth;
pub mod types;

pub use crate::error::{Error, Result};
pub use crate::homography::Homography;
pub use crate::image::{absdiff, resize_bilinear, Image};
pub use crate::types::{ClassPalette, ClassSpec, Frame, FramePair, LabelMask, LightKind};
