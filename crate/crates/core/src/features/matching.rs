use super::Descriptor;
use crate::par;

/// Default Hamming cutoff for accepting a match.
pub const DEFAULT_MAX_DISTANCE: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Match {
    pub index_a: usize,
    pub index_b: usize,
    pub distance: u32,
}

/// Index and distance of the Hamming-nearest descriptor, lowest index on ties.
fn nearest(d: &Descriptor, pool: &[Descriptor]) -> Option<(usize, u32)> {
    let mut best: Option<(usize, u32)> = None;
    for (j, q) in pool.iter().enumerate() {
        let dist = d.hamming(q);
        if best.is_none_or(|(_, bd)| dist < bd) {
            best = Some((j, dist));
        }
    }
    best
}

/// Cross-checked brute-force matching with the default distance cutoff.
pub fn match_bruteforce(a: &[Descriptor], b: &[Descriptor]) -> Vec<Match> {
    match_bruteforce_with(a, b, DEFAULT_MAX_DISTANCE)
}

/// Pairs `a[i]` with its nearest `b[j]` when `a[i]` is also the nearest to
/// `b[j]` and the distance is at most `max_distance`. Ordered by `index_a`.
pub fn match_bruteforce_with(a: &[Descriptor], b: &[Descriptor], max_distance: u32) -> Vec<Match> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let forward = par::map(a, |d| nearest(d, b));
    let backward = par::map(b, |d| nearest(d, a));
    forward
        .into_iter()
        .enumerate()
        .filter_map(|(i, f)| {
            let (j, distance) = f?;
            let (back, _) = backward[j]?;
            (back == i && distance <= max_distance).then_some(Match {
                index_a: i,
                index_b: j,
                distance,
            })
        })
        .collect()
}
