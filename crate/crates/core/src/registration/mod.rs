//! Robust planar registration of the UV capture onto the regular capture:
//! normalized DLT, RANSAC with symmetric transfer error, and bilinear
//! inverse warping.

mod align;
mod dlt;
mod ransac;
mod warp;

pub use align::{align_pair, estimate_alignment, AlignConfig, AlignmentEstimate};
pub use dlt::{solve_homography_dlt, Correspondence};
pub use ransac::{
    estimate_homography_ransac, symmetric_transfer_error, RansacConfig, RansacResult,
};
pub use warp::warp;
