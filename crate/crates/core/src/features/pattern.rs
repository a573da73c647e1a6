//! Frozen sampling pattern for the rotated binary descriptor.
//!
//! 256 point pairs `[x1, y1, x2, y2]` drawn once from an isotropic Gaussian
//! (sigma = 31/5) with a fixed seed, rounded to integers and rejected unless
//! both points lie within radius 13 of the center and differ. Radius 13 keeps
//! every rotated sample inside the 31×31 patch.

pub(crate) const PATTERN_RADIUS: i32 = 13;

#[rustfmt::skip]
pub(crate) const BRIEF_PATTERN: [[i8; 4]; 256] = [
    [-5, -3, -6, -4], [4, 6, 8, -7], [1, 3, 2, -12], [6, 2, 1, -1],
    [-8, -1, 3, 0], [0, -12, 2, -2], [4, -1, 0, -4], [-8, 1, -11, 2],
    [-7, -5, -2, 9], [-6, -3, -8, 0], [1, -7, 8, 6], [-2, -2, 0, -2],
    [-2, -2, 3, -6], [6, 2, 0, 10], [-2, -4, -1, -4], [2, -3, 5, -6],
    [-7, -6, 1, 2], [-4, -1, 1, -3], [-2, -9, 0, -2], [-5, 3, -11, 1],
    [5, -3, 5, 1], [8, -5, 4, 3], [2, -7, 7, 3], [-7, 4, -5, -11],
    [-5, 5, -4, -5], [-6, -5, -4, -6], [2, 6, 5, 0], [0, -7, -10, -4],
    [0, 11, -4, 2], [11, 6, 5, 4], [4, -1, -2, -3], [8, 10, 6, 5],
    [1, 2, -6, 8], [8, 1, 1, -6], [-11, 0, 9, -5], [-6, -3, 9, 4],
    [-6, -5, -7, 3], [2, -6, 5, -1], [-3, 6, 2, 0], [5, -8, 0, -7],
    [2, 3, 12, 2], [2, 7, 8, 6], [6, -7, -4, 6], [-2, 5, 1, -5],
    [-5, -4, -6, 7], [0, -1, -4, -1], [5, -9, 4, 1], [4, -3, -7, 8],
    [-6, -2, -3, -9], [3, 5, 3, 1], [3, 3, 5, -1], [8, 6, 0, -3],
    [2, 2, -1, 5], [-4, 9, 7, -6], [3, 1, 2, -9], [1, 12, -4, 2],
    [6, 1, -6, -7], [1, 9, -2, -3], [10, -3, -2, 7], [4, -8, 3, 10],
    [-5, 3, 11, 3], [6, 3, 0, -2], [-2, 4, 1, 0], [-3, 4, -5, 0],
    [-8, -8, -3, 0], [12, 2, -6, -4], [3, 11, 2, -5], [7, 4, -3, 3],
    [6, 8, 3, -9], [0, 1, -1, 6], [-5, -4, 5, 11], [-1, -7, 2, 1],
    [-5, -1, -1, 3], [-8, -1, 0, 6], [8, 1, 9, -7], [-1, 1, 0, -5],
    [-5, -2, -4, -7], [-1, -3, 2, 12], [-1, -7, 0, -4], [3, 5, -6, -6],
    [6, -7, 3, 0], [6, 2, 6, -7], [-3, -3, 2, -8], [4, -5, -2, 3],
    [4, -12, -4, -4], [3, 0, -1, 0], [5, -6, -4, -4], [-4, -12, 4, 6],
    [0, 2, 3, -4], [-5, -2, -7, 2], [-8, 1, -5, -8], [4, -3, 1, 9],
    [-5, 5, 1, 6], [0, 5, -4, -12], [4, 5, -2, 5], [1, -7, -12, 3],
    [2, 9, 8, -2], [-4, -3, -4, 0], [5, 8, -3, 8], [-2, 9, 9, -5],
    [-4, 3, -7, 2], [-9, -6, 0, 13], [5, 1, 2, -7], [7, 0, 0, -9],
    [-6, -1, 1, 2], [-3, 10, 6, 3], [5, -3, 5, 1], [-7, -1, -2, 1],
    [-3, -9, 0, 7], [-11, -1, 2, 11], [-5, 0, 2, -2], [-4, 0, -8, -7],
    [3, -7, 0, 8], [-5, -1, 1, 5], [-8, 4, 1, -2], [-7, 7, 2, 6],
    [4, 7, 3, -4], [-1, 1, -3, -10], [6, 2, -6, -2], [9, 2, 0, -6],
    [4, 9, 9, -6], [4, 10, 3, 6], [1, -2, 9, -5], [6, -8, -4, 4],
    [6, -6, -5, 6], [-2, -1, 12, -2], [7, 3, 0, -3], [-5, 4, 3, 0],
    [-3, 0, -5, -5], [0, -9, -7, 4], [-1, -4, 9, -4], [-7, -9, -5, -2],
    [4, 6, 8, 1], [-4, 2, 1, -2], [-8, 0, -10, -2], [1, -6, 1, 0],
    [4, -7, -8, -1], [9, 3, 2, 6], [-3, 0, 3, 9], [0, 10, 11, -3],
    [-4, 6, -7, 5], [6, -8, 4, 1], [-6, -2, -2, 3], [5, 8, 1, 0],
    [-5, 1, 4, 1], [-4, 12, -2, -1], [-4, 1, -5, 4], [7, -2, 4, -5],
    [-4, -9, 8, 8], [1, 11, 7, -5], [-1, 6, 5, -7], [6, 2, -2, -4],
    [2, 9, -6, 0], [-3, 7, 0, -4], [6, -2, 6, 4], [7, 4, -1, -1],
    [-3, -4, 1, 0], [11, -4, -4, 0], [-3, 4, 4, -3], [11, -2, -3, 7],
    [-6, 1, -1, -4], [-2, 5, -9, -6], [7, 2, 4, 5], [0, -2, 2, -10],
    [-6, -2, 5, 5], [1, 6, -5, 6], [-5, 1, 2, 1], [-9, -9, -5, -3],
    [2, -3, -3, 2], [0, 1, 5, 2], [3, -7, -7, -3], [3, 7, 8, 5],
    [-1, 6, 7, -3], [-5, 1, -7, -1], [-1, 2, -4, 8], [1, -4, 4, 0],
    [8, -1, 9, -7], [2, 5, 5, -3], [2, -9, -2, -3], [-4, 5, 2, -4],
    [-2, -7, -6, -1], [6, -1, -6, -6], [4, 7, -6, 10], [1, -1, -2, 2],
    [7, -3, -7, -3], [-9, 9, -4, -6], [2, -11, -2, 1], [11, -4, 6, 1],
    [1, -7, 2, -1], [-6, 2, -3, -5], [-3, 5, 7, -3], [3, 8, -11, 2],
    [1, -1, -5, 1], [2, 4, 7, -1], [9, 0, 3, 5], [5, -6, 0, -3],
    [6, -8, 0, -4], [-8, -1, 6, 1], [-1, -4, 9, 6], [6, -9, -2, -6],
    [-4, 1, 3, 0], [-3, -7, 7, 3], [-9, -2, -8, 7], [-1, -5, 3, 12],
    [1, -2, -1, 5], [2, -7, 0, -3], [-5, 4, -12, -3], [1, -8, -2, -9],
    [-5, -4, 6, -8], [-4, -4, 9, 5], [-2, 9, -2, -9], [-1, -1, -10, 5],
    [-2, -1, 1, -2], [0, -2, 5, -7], [-1, 6, 0, -4], [0, -5, 12, 2],
    [-3, 12, 7, 3], [-3, -1, 11, -2], [9, -2, 7, 2], [8, -7, -6, -7],
    [1, -6, 3, -7], [1, 0, 5, 9], [-7, -3, 6, 2], [-4, -10, 0, 3],
    [0, 4, 4, 8], [-2, 1, -6, 2], [-5, -1, 10, 0], [0, 3, -1, 2],
    [-2, 9, -6, 4], [-4, -6, 6, 7], [-6, 6, 7, 3], [2, 9, -2, 9],
    [4, -5, 1, 0], [4, 2, -7, 9], [0, 2, -3, 3], [8, 3, -6, 1],
    [-4, 5, 6, -3], [4, -12, 5, 0], [-1, -1, -4, -5], [-2, 0, 3, -2],
    [-5, -8, 5, 12], [-3, 3, -9, 0], [-4, -1, -3, -1], [-5, -2, 5, -4],
    [3, 12, 3, -7], [2, -8, -6, 1], [-9, 1, -5, 1], [-2, -4, 1, 3],
    [-6, -2, 0, 2], [0, 3, 6, -5], [7, 9, -8, 5], [0, -3, 4, -9],
    [-8, -6, -3, 3], [-2, 10, -1, 3], [-9, 3, -6, -10], [6, 3, -2, -3],
];
