//! Fixing sets and the fixing number.

use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::Graph;
use crate::perm::{Caps, Search};

/// A minimum fixing set together with search statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixingResult {
    pub fix: usize,
    /// The lexicographically least minimum fixing set, ascending.
    pub witness: Vec<usize>,
    /// Twin lower bound the deepening started from.
    pub lower_bound_used: usize,
    pub nodes_searched: u64,
}

/// `true` iff only the identity automorphism fixes every vertex of `set`.
pub fn is_fixing_set(g: &Graph, set: &[usize]) -> Result<bool> {
    g.check_vertices(set)?;
    Ok(Search::new(g).nontrivial_fixing(set).is_none())
}

/// Each twin class of size `m` must meet every fixing set in at least
/// `m - 1` vertices. Closed and open non-trivial classes never share a
/// vertex (a vertex with both an adjacent and a non-adjacent twin would
/// force those two twins to be simultaneously adjacent and not), so the
/// contributions of both partitions add up.
pub fn twin_lower_bound(g: &Graph) -> usize {
    g.twin_partition().nontrivial_classes().map(|c| c.len() - 1).sum()
}

pub fn fixing_number(g: &Graph) -> Result<FixingResult> {
    fixing_number_with(g, &Caps::default())
}

/// Iterative deepening from the twin bound. At each level only vertices
/// that are the least member of a non-trivial orbit of the current
/// pointwise stabilizer, and larger than the last chosen vertex, are tried.
/// The lexicographically least minimum fixing set satisfies both
/// conditions at every prefix, so the first hit is that set.
pub fn fixing_number_with(g: &Graph, caps: &Caps) -> Result<FixingResult> {
    caps.check_order(g)?;
    let search = Search::new(g);
    let lower = twin_lower_bound(g);
    let mut nodes = 0u64;
    let mut pins = Vec::new();
    for k in lower..=g.order() {
        if extend(&search, &mut pins, k, &mut nodes) {
            return Ok(FixingResult {
                fix: pins.len(),
                witness: pins,
                lower_bound_used: lower,
                nodes_searched: nodes,
            });
        }
    }
    unreachable!("the full vertex set always fixes the graph")
}

fn extend(search: &Search<'_>, pins: &mut Vec<usize>, budget: usize, nodes: &mut u64) -> bool {
    *nodes += 1;
    let orbits = search.stabilizer_orbits(pins);
    if orbits.is_discrete() {
        return true;
    }
    if pins.len() == budget {
        return false;
    }
    let floor = pins.last().map_or(0, |&v| v + 1);
    let candidates: Vec<usize> = orbits
        .blocks()
        .iter()
        .filter(|b| b.len() > 1 && b[0] >= floor)
        .map(|b| b[0])
        .collect();
    let mut sorted = candidates;
    sorted.sort_unstable();
    for v in sorted {
        pins.push(v);
        if extend(search, pins, budget, nodes) {
            return true;
        }
        pins.pop();
    }
    false
}

/// The witness of [`fixing_number`].
pub fn min_fixing_set(g: &Graph) -> Result<Vec<usize>> {
    Ok(fixing_number(g)?.witness)
}
