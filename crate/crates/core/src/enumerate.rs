//! Exhaustive instance streams for the verification sweeps.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Every labeled graph on `n` vertices, by edge-subset bitmask over the
/// lexicographically ordered vertex pairs.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    assert!(pairs.len() < 64, "too many vertex pairs to enumerate");
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges).expect("pairs are valid")
    })
}

/// All labeled connected graphs on `n <= 6` vertices.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::CapExceeded {
            what: "connected graph enumeration order",
            limit: 6,
            partial_generators: Vec::new(),
        });
    }
    Ok(labeled_graphs(n).filter(Graph::is_connected).collect())
}

/// All `n^(n-2)` labeled trees on `n >= 1` vertices, decoded from Prüfer
/// sequences in lexicographic order.
pub fn labeled_trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::InvalidParameter("trees need at least one vertex".into()));
    }
    if n <= 2 {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        return Ok(vec![Graph::new(n, &edges)?]);
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut code = vec![0usize; len];
    for mut idx in 0..total {
        for slot in code.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        out.push(prufer_decode(n, &code));
    }
    Ok(out)
}

/// The labeled tree on `n >= 2` vertices with the given Prüfer sequence
/// (length `n - 2`, entries below `n`).
pub fn tree_from_prufer(n: usize, code: &[usize]) -> Result<Graph> {
    if n < 2 || code.len() != n - 2 {
        return Err(Error::InvalidParameter(format!(
            "a Prüfer sequence for {n} vertices has length n - 2"
        )));
    }
    if let Some(&bad) = code.iter().find(|&&c| c >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    Ok(prufer_decode(n, code))
}

fn prufer_decode(n: usize, code: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).expect("decoded tree is simple")
}
