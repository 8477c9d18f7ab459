//! Resolving sets and metric dimension.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::perm::Caps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvingResult {
    pub beta: usize,
    /// Lexicographically least minimum resolving set, ascending.
    pub witness: Vec<usize>,
}

/// `true` iff the distance vectors to `set` are pairwise distinct.
pub fn is_resolving_set(g: &Graph, set: &[usize]) -> Result<bool> {
    g.check_vertices(set)?;
    let dist = g.distance_matrix();
    if !dist.all_finite() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    let mut vectors: Vec<Vec<u32>> =
        (0..n).map(|v| set.iter().map(|&w| dist.get(v, w)).collect()).collect();
    vectors.sort_unstable();
    Ok(vectors.windows(2).all(|w| w[0] != w[1]))
}

pub fn metric_dimension(g: &Graph) -> Result<ResolvingResult> {
    metric_dimension_with(g, &Caps::default())
}

/// Tries sets by increasing size in lexicographic order. Vertices are kept
/// in classes of equal partial distance vector; a branch is abandoned when
/// even a perfect split by every remaining pick could not separate the
/// largest class.
pub fn metric_dimension_with(g: &Graph, caps: &Caps) -> Result<ResolvingResult> {
    let n = g.order();
    if n > caps.max_resolving_vertices {
        return Err(Error::CapExceeded {
            what: "metric dimension vertex count",
            limit: caps.max_resolving_vertices as u128,
            partial_generators: Vec::new(),
        });
    }
    let dist = g.distance_matrix();
    if !dist.all_finite() {
        return Err(Error::Disconnected);
    }
    let max_split = (0..n).map(|v| dist.row(v).iter().max().copied().unwrap_or(0) + 1).max();
    let max_split = max_split.unwrap_or(1) as usize;
    let classes = vec![0u32; n];
    let mut chosen = Vec::new();
    for k in 0..=n {
        if split(&dist, &classes, 1, &mut chosen, 0, k, max_split) {
            return Ok(ResolvingResult { beta: chosen.len(), witness: chosen });
        }
    }
    unreachable!("the full vertex set resolves a connected graph")
}

fn split(
    dist: &DistanceMatrix,
    classes: &[u32],
    class_count: usize,
    chosen: &mut Vec<usize>,
    floor: usize,
    budget: usize,
    max_split: usize,
) -> bool {
    let n = classes.len();
    if class_count == n {
        return true;
    }
    let remaining = budget - chosen.len();
    if remaining == 0 {
        return false;
    }
    let mut sizes = vec![0usize; class_count];
    for &c in classes {
        sizes[c as usize] += 1;
    }
    let largest = sizes.iter().copied().max().unwrap_or(0);
    if max_split.saturating_pow(remaining as u32) < largest {
        return false;
    }
    for w in floor..n {
        let (next, count) = refine_by(dist, classes, w);
        chosen.push(w);
        if split(dist, &next, count, chosen, w + 1, budget, max_split) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Splits every class by distance to `w`; new ids are ranked by
/// `(old class, distance)`.
fn refine_by(dist: &DistanceMatrix, classes: &[u32], w: usize) -> (Vec<u32>, usize) {
    let n = classes.len();
    let mut keys: Vec<(u32, u32, usize)> = (0..n).map(|v| (classes[v], dist.get(v, w), v)).collect();
    keys.sort_unstable();
    let mut next = vec![0u32; n];
    let mut id = 0u32;
    for k in 0..n {
        if k > 0 && (keys[k].0, keys[k].1) != (keys[k - 1].0, keys[k - 1].1) {
            id += 1;
        }
        next[keys[k].2] = id;
    }
    (next, if n == 0 { 0 } else { id as usize + 1 })
}
