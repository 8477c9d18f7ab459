//! Simple undirected graphs on vertex ids `0..n`, the named families used
//! throughout the crate, and structural queries.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Distance value used for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// An immutable simple graph. Edges are stored once as `(u, v)` with
/// `u < v`, sorted; adjacency lists and a bit matrix are derived from them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    stride: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; loops and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            norm.push(if a < b { (a, b) } else { (b, a) });
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(Graph::from_normalized(n, norm))
    }

    fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let stride = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * stride];
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
            bits[a * stride + b / 64] |= 1 << (b % 64);
            bits[b * stride + a / 64] |= 1 << (a % 64);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj, stride, bits }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_normalized(n, Vec::new())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + v / 64] & (1 << (v % 64)) != 0
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub(crate) fn check_vertices(&self, vs: &[usize]) -> Result<()> {
        vs.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Breadth-first distances from `source`; [`UNREACHABLE`] marks other
    /// components.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path length between `u` and `v`, `None` when unreachable.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let d = self.bfs(u)[v];
        Ok((d != UNREACHABLE).then_some(d as usize))
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        let mut data = Vec::with_capacity(self.n * self.n);
        for v in 0..self.n {
            data.extend(self.bfs(v));
        }
        DistanceMatrix { n: self.n, data }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Vertices adjacent to every other vertex.
    pub fn saturated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) + 1 == self.n).collect()
    }

    /// True when `N(u) = N(v)`.
    pub fn open_twins(&self, u: usize, v: usize) -> bool {
        u != v && self.row(u) == self.row(v)
    }

    /// True when `N[u] = N[v]`.
    pub fn closed_twins(&self, u: usize, v: usize) -> bool {
        if u == v || !self.has_edge(u, v) {
            return false;
        }
        let (ru, rv) = (self.row(u), self.row(v));
        (0..self.stride).all(|i| {
            let mut a = ru[i];
            let mut b = rv[i];
            if u / 64 == i {
                a |= 1 << (u % 64);
                b |= 1 << (u % 64);
            }
            if v / 64 == i {
                a |= 1 << (v % 64);
                b |= 1 << (v % 64);
            }
            a == b
        })
    }

    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        self.open_twins(u, v) || self.closed_twins(u, v)
    }

    pub fn twin_partition(&self) -> TwinPartition {
        TwinPartition {
            closed_classes: classes_by(self.n, |u, v| self.closed_twins(u, v)),
            open_classes: classes_by(self.n, |u, v| self.open_twins(u, v)),
        }
    }

    /// `(pendant count, support count)` of a tree.
    pub fn pendant_support_counts(&self) -> Result<(usize, usize)> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        let pendant: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) == 1).collect();
        let mut support = vec![false; self.n];
        for &p in &pendant {
            for &w in self.neighbors(p) {
                support[w] = true;
            }
        }
        Ok((pendant.len(), support.iter().filter(|&&s| s).count()))
    }

    /// Image of the graph under a vertex relabeling `v -> map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Result<Graph> {
        if map.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: map.len() });
        }
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (map[a], map[b])).collect();
        Graph::new(self.n, &edges)
    }

    /// Disjoint union; `other` is shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        Graph::from_normalized(self.n + other.n, edges)
    }

    /// Disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        for a in 0..self.n {
            for b in 0..other.n {
                edges.push((a, b + off));
            }
        }
        edges.sort_unstable();
        Graph::from_normalized(self.n + other.n, edges)
    }
}

/// Classes of an equivalence relation given pairwise, each sorted, ordered
/// by least member.
fn classes_by(n: usize, same: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class = vec![v];
        class_of[v] = id;
        for w in v + 1..n {
            if class_of[w] == usize::MAX && same(v, w) {
                class_of[w] = id;
                class.push(w);
            }
        }
        classes.push(class);
    }
    classes
}

/// All-pairs shortest-path lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|&d| d != UNREACHABLE)
    }
}

/// The closed-twin (`N[u] = N[v]`) and open-twin (`N(u) = N(v)`)
/// partitions of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    pub closed_classes: Vec<Vec<usize>>,
    pub open_classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    /// Classes with at least two members, from both partitions. A vertex
    /// never lies in a non-trivial class of both kinds.
    pub fn nontrivial_classes(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.closed_classes
            .iter()
            .chain(&self.open_classes)
            .filter(|c| c.len() >= 2)
    }
}

/// A named graph family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `P_n`, vertices `0..n` in path order.
    Path(usize),
    /// `C_n`, vertices in cyclic order.
    Cycle(usize),
    Complete(usize),
    /// `K_{1,k}` with center `0` and leaves `1..=k`.
    Star(usize),
    /// Path `v_1..v_t` with two pendants `u_i`, `w_i` hung on each `v_i`.
    /// Labels: `v_i = i-1`, `u_i = t+i-1`, `w_i = 2t+i-1`.
    PendantPairTree(usize),
    /// `K_n` minus the matching `(0,1), (2,3), ..., (2i-2, 2i-1)`.
    CompleteMinusMatching { n: usize, i: usize },
    Join(Box<FamilySpec>, Box<FamilySpec>),
    Union(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn join(a: FamilySpec, b: FamilySpec) -> FamilySpec {
        FamilySpec::Join(Box::new(a), Box::new(b))
    }

    pub fn union(a: FamilySpec, b: FamilySpec) -> FamilySpec {
        FamilySpec::Union(Box::new(a), Box::new(b))
    }

    pub fn generate(&self) -> Result<Graph> {
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("{self}: {msg}")));
        match *self {
            FamilySpec::Path(n) => {
                if n < 1 {
                    return bad("path needs at least one vertex");
                }
                Ok(Graph::from_normalized(n, (1..n).map(|i| (i - 1, i)).collect()))
            }
            FamilySpec::Cycle(n) => {
                if n < 3 {
                    return bad("cycle needs at least three vertices");
                }
                let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                edges.push((0, n - 1));
                edges.sort_unstable();
                Ok(Graph::from_normalized(n, edges))
            }
            FamilySpec::Complete(n) => {
                if n < 1 {
                    return bad("complete graph needs at least one vertex");
                }
                Ok(Graph::from_normalized(n, complete_edges(n)))
            }
            FamilySpec::Star(k) => {
                if k < 1 {
                    return bad("star needs at least one leaf");
                }
                Ok(Graph::from_normalized(k + 1, (1..=k).map(|i| (0, i)).collect()))
            }
            FamilySpec::PendantPairTree(t) => {
                if t < 2 {
                    return bad("pendant-pair tree needs t >= 2");
                }
                let mut edges: Vec<_> = (1..t).map(|i| (i - 1, i)).collect();
                for i in 0..t {
                    edges.push((i, t + i));
                    edges.push((i, 2 * t + i));
                }
                Graph::new(3 * t, &edges)
            }
            FamilySpec::CompleteMinusMatching { n, i } => {
                if i < 1 || i > n / 2 {
                    return bad("need 1 <= i <= n/2");
                }
                let edges = complete_edges(n)
                    .into_iter()
                    .filter(|&(a, b)| !(b == a + 1 && a % 2 == 0 && a < 2 * i))
                    .collect();
                Ok(Graph::from_normalized(n, edges))
            }
            FamilySpec::Join(ref a, ref b) => Ok(a.generate()?.join(&b.generate()?)),
            FamilySpec::Union(ref a, ref b) => Ok(a.generate()?.disjoint_union(&b.generate()?)),
        }
    }
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    edges
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Star(k) => write!(f, "star:{k}"),
            FamilySpec::PendantPairTree(t) => write!(f, "pendant-pair-tree:{t}"),
            FamilySpec::CompleteMinusMatching { n, i } => {
                write!(f, "complete-minus-matching:{n},{i}")
            }
            FamilySpec::Join(a, b) => write!(f, "join({a},{b})"),
            FamilySpec::Union(a, b) => write!(f, "union({a},{b})"),
        }
    }
}

/// Parses `name:p[,p]` and `join(A,B)` / `union(A,B)`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("malformed family spec `{s}`"));
        for (prefix, binary) in [("join(", true), ("union(", false)] {
            if let Some(inner) = s.strip_prefix(prefix) {
                let inner = inner.strip_suffix(')').ok_or_else(bad)?;
                let split = top_level_comma(inner).ok_or_else(bad)?;
                let a: FamilySpec = inner[..split].parse()?;
                let b: FamilySpec = inner[split + 1..].parse()?;
                return Ok(if binary { FamilySpec::join(a, b) } else { FamilySpec::union(a, b) });
            }
        }
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let params = params
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let one = |make: fn(usize) -> FamilySpec| match params[..] {
            [p] => Ok(make(p)),
            _ => Err(bad()),
        };
        match name.trim() {
            "path" => one(FamilySpec::Path),
            "cycle" => one(FamilySpec::Cycle),
            "complete" => one(FamilySpec::Complete),
            "star" => one(FamilySpec::Star),
            "pendant-pair-tree" => one(FamilySpec::PendantPairTree),
            "complete-minus-matching" => match params[..] {
                [n, i] => Ok(FamilySpec::CompleteMinusMatching { n, i }),
                _ => Err(bad()),
            },
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 && found.is_none() => {
                // Parameter lists like `complete-minus-matching:6,2` contain
                // commas too; the operand split is the one followed by a name.
                let rest = s[i + 1..].trim_start();
                if rest.starts_with(|ch: char| ch.is_ascii_alphabetic()) {
                    found = Some(i);
                }
            }
            _ => {}
        }
    }
    found
}

/// Convenience for tests and the CLI: the graph named by a family string.
pub fn family(spec: &str) -> Result<Graph> {
    spec.parse::<FamilySpec>()?.generate()
}

impl fmt::Display for Graph {
    /// The text edge-list format: `n m`, then one `u v` line per edge.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for (a, b) in &self.edges {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_graph_examples() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3, family("path:3").unwrap());
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        let p4 = Graph::new(4, &[(0, 1), (0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.size(), 3);
        assert_eq!(p4, family("path:4").unwrap());
    }

    #[test]
    fn make_graph_errors() {
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(Error::LoopEdge(1)));
    }

    #[test]
    fn reversed_and_duplicate_edges_normalize() {
        let g = Graph::new(3, &[(2, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn generator_examples() {
        let t2 = family("pendant-pair-tree:2").unwrap();
        assert_eq!((t2.order(), t2.size()), (6, 5));
        let mut deg: Vec<_> = (0..6).map(|v| t2.degree(v)).collect();
        deg.sort_unstable();
        assert_eq!(deg, [1, 1, 1, 1, 3, 3]);

        let c4 = family("complete-minus-matching:4,2").unwrap();
        assert_eq!(c4.edges(), &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!((0..4).all(|v| c4.degree(v) == 2) && c4.is_connected());

        assert_eq!(family("join(path:2,path:2)").unwrap(), family("complete:4").unwrap());
    }

    #[test]
    fn generator_parameter_ranges() {
        for bad in [
            "path:0",
            "cycle:2",
            "complete:0",
            "star:0",
            "pendant-pair-tree:1",
            "complete-minus-matching:5,3",
            "complete-minus-matching:5,0",
        ] {
            assert!(matches!(family(bad), Err(Error::InvalidParameter(_))), "{bad}");
        }
        assert!(matches!(family("wheel:5"), Err(Error::UnknownTag(_))));
    }

    #[test]
    fn pendant_pair_tree_labels() {
        let t = 3;
        let g = FamilySpec::PendantPairTree(t).generate().unwrap();
        for i in 0..t {
            assert!(g.has_edge(i, t + i) && g.has_edge(i, 2 * t + i));
            assert_eq!(g.degree(t + i), 1);
        }
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn family_edge_counts() {
        for n in 1..9 {
            assert_eq!(family(&format!("path:{n}")).unwrap().size(), n - 1);
            assert_eq!(family(&format!("complete:{n}")).unwrap().size(), n * (n - 1) / 2);
            for i in 1..=n / 2 {
                let g = FamilySpec::CompleteMinusMatching { n, i }.generate().unwrap();
                assert_eq!(g.size(), n * (n - 1) / 2 - i);
            }
        }
        for t in 2..8 {
            let g = FamilySpec::PendantPairTree(t).generate().unwrap();
            assert_eq!((g.order(), g.size()), (3 * t, 3 * t - 1));
            assert!(g.is_tree());
        }
    }

    #[test]
    fn distance_examples() {
        let p4 = family("path:4").unwrap();
        assert_eq!(p4.distance(0, 3), Ok(Some(3)));
        assert_eq!(p4.distance(2, 2), Ok(Some(0)));
        let split = family("union(path:2,path:2)").unwrap();
        assert_eq!(split.distance(0, 2), Ok(None));
        assert!(p4.distance(0, 4).is_err());
    }

    #[test]
    fn saturated_examples() {
        assert_eq!(family("complete:5").unwrap().saturated_vertices(), [0, 1, 2, 3, 4]);
        assert!(family("path:4").unwrap().saturated_vertices().is_empty());
        assert_eq!(family("star:4").unwrap().saturated_vertices(), [0]);
    }

    #[test]
    fn twin_examples() {
        let k4 = family("complete:4").unwrap().twin_partition();
        assert_eq!(k4.closed_classes, [vec![0, 1, 2, 3]]);
        assert!(k4.open_classes.iter().all(|c| c.len() == 1));

        let star = family("star:4").unwrap().twin_partition();
        assert!(star.open_classes.contains(&vec![1, 2, 3, 4]));

        let p4 = family("path:4").unwrap().twin_partition();
        assert!(p4.nontrivial_classes().next().is_none());
    }

    #[test]
    fn twin_classes_are_cliques_or_independent() {
        let g = family("complete-minus-matching:7,2").unwrap();
        let tp = g.twin_partition();
        for c in &tp.closed_classes {
            for &a in c {
                for &b in c {
                    assert!(a == b || g.has_edge(a, b));
                }
            }
        }
        for c in &tp.open_classes {
            for &a in c {
                for &b in c {
                    assert!(!g.has_edge(a, b));
                }
            }
        }
        assert!(tp.open_classes.contains(&vec![0, 1]));
        assert!(tp.closed_classes.contains(&vec![4, 5, 6]));
    }

    #[test]
    fn pendant_support_examples() {
        assert_eq!(family("path:2").unwrap().pendant_support_counts(), Ok((2, 2)));
        assert_eq!(family("star:4").unwrap().pendant_support_counts(), Ok((4, 1)));
        assert_eq!(family("pendant-pair-tree:3").unwrap().pendant_support_counts(), Ok((6, 3)));
        assert_eq!(family("cycle:4").unwrap().pendant_support_counts(), Err(Error::NotATree));
    }

    #[test]
    fn connectivity_examples() {
        assert!(family("path:5").unwrap().is_connected());
        assert!(!family("union(path:2,path:2)").unwrap().is_connected());
        assert!(family("complete:1").unwrap().is_connected());
    }

    #[test]
    fn family_spec_round_trip() {
        for s in [
            "path:3",
            "complete-minus-matching:6,2",
            "join(complete-minus-matching:6,2,star:3)",
            "union(join(path:2,path:3),cycle:5)",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn wide_graphs_use_multiword_rows() {
        let g = family("complete:70").unwrap();
        assert!(g.has_edge(3, 69) && g.has_edge(68, 69));
        assert!(g.closed_twins(0, 69) && !g.open_twins(0, 69));
        assert_eq!(g.saturated_vertices().len(), 70);
    }
}
