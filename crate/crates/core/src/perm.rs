//! Permutations, explicit automorphism groups, orbits and stabilizers.
//!
//! Automorphisms are found by a backtracking search over vertex images.
//! Vertices start colored by a cheap invariant (degree, neighbor-degree
//! multiset, distance multiset); the coloring is refined to an equitable
//! partition, and the search individualizes one vertex per level on each
//! side, pruning whenever the two refined colorings disagree. Leaves whose
//! induced bijection preserves every edge are automorphisms.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A bijection on `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if seen[v] {
                return Err(Error::InvalidParameter(alloc::format!(
                    "image {v} repeated; not a bijection"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`, i.e. `v -> self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::SizeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(Permutation { images: other.images.iter().map(|&v| self.images[v]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn fixes_all(&self, set: &[usize]) -> bool {
        set.iter().all(|&v| self.images[v] == v)
    }

    /// Edges map to edges. Since the permutation is a bijection on a finite
    /// edge set, non-edges then map to non-edges as well.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.degree() == g.order()
            && g.edges().iter().all(|&(a, b)| g.has_edge(self.images[a], self.images[b]))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// One-line image array, e.g. `0 2 1 3`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Search limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_vertices: usize,
    /// Largest group that [`automorphism_group_with`] will materialize.
    pub max_elements: u128,
    /// Largest graph [`crate::resolving::metric_dimension_with`] accepts.
    pub max_resolving_vertices: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { max_vertices: 32, max_elements: 10_000_000, max_resolving_vertices: 16 }
    }
}

impl Caps {
    pub(crate) fn check_order(&self, g: &Graph) -> Result<()> {
        if g.order() > self.max_vertices {
            return Err(Error::CapExceeded {
                what: "vertex count",
                limit: self.max_vertices as u128,
                partial_generators: Vec::new(),
            });
        }
        Ok(())
    }
}

/// An explicit permutation group: every element, sorted by image array,
/// plus a generating subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermGroup {
    /// Wraps an element list that is already known to be a group. The
    /// generators are picked greedily: an element is kept when it is not
    /// in the subgroup generated by the ones kept before it.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> PermGroup {
        elements.sort_unstable();
        elements.dedup();
        let mut generators = Vec::new();
        let mut span: BTreeSet<Permutation> = BTreeSet::new();
        span.insert(Permutation::identity(degree));
        for e in &elements {
            if span.contains(e) {
                continue;
            }
            generators.push(e.clone());
            span = closure(degree, &generators);
        }
        PermGroup { degree, elements, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn orbits(&self) -> OrbitPartition {
        OrbitPartition::from_permutations(self.degree, &self.elements)
    }

    /// Elements fixing every vertex of `set`.
    pub fn pointwise_stabilizer(&self, set: &[usize]) -> PermGroup {
        let elements = self.elements.iter().filter(|p| p.fixes_all(set)).cloned().collect();
        PermGroup::from_elements(self.degree, elements)
    }
}

fn closure(degree: usize, generators: &[Permutation]) -> BTreeSet<Permutation> {
    let mut span = BTreeSet::new();
    let id = Permutation::identity(degree);
    let mut frontier = vec![id.clone()];
    span.insert(id);
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p).expect("equal degree");
            if span.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    span
}

pub fn orbits(group: &PermGroup) -> OrbitPartition {
    group.orbits()
}

pub fn pointwise_stabilizer(group: &PermGroup, set: &[usize]) -> PermGroup {
    group.pointwise_stabilizer(set)
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

/// A partition of `0..n` into orbits, blocks sorted and ordered by least
/// member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl OrbitPartition {
    /// Orbits of the group generated by `perms` (any generating set gives
    /// the same partition as the full element list).
    pub fn from_permutations(n: usize, perms: &[Permutation]) -> OrbitPartition {
        let mut uf = UnionFind::new(n);
        for p in perms {
            uf.union_cycles(p);
        }
        uf.into_partition()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> &[usize] {
        &self.blocks[self.block_of[v]]
    }

    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.block_of[u] == self.block_of[v]
    }

    /// The least vertex of `v`'s orbit.
    pub fn representative(&self, v: usize) -> usize {
        self.block_of(v)[0]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn root(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller id as root so roots are orbit minima.
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    fn union_cycles(&mut self, p: &Permutation) {
        for v in 0..p.degree() {
            self.union(v, p.apply(v));
        }
    }

    fn into_partition(mut self) -> OrbitPartition {
        let n = self.parent.len();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let r = self.find(v);
            if block_of[r] == usize::MAX {
                block_of[r] = blocks.len();
                blocks.push(Vec::new());
            }
            let b = block_of[r];
            block_of[v] = b;
            blocks[b].push(v);
        }
        OrbitPartition { blocks, block_of }
    }
}

/// Vertex colors, canonical ids `0..k` after refinement.
type Coloring = Vec<u32>;

/// Refinement engine bound to one graph.
pub(crate) struct Search<'g> {
    g: &'g Graph,
    base: Coloring,
}

impl<'g> Search<'g> {
    pub(crate) fn new(g: &'g Graph) -> Search<'g> {
        let mut base = invariant_coloring(g);
        refine_single(g, &mut base);
        Search { g, base }
    }

    /// Base coloring with `pins` individualized, in order, and refined.
    fn pinned(&self, pins: &[usize]) -> Coloring {
        let mut colors = self.base.clone();
        for &p in pins {
            individualize(&mut colors, p);
            refine_single(self.g, &mut colors);
        }
        colors
    }

    /// An automorphism fixing `pins` pointwise and mapping `from` to `to`.
    fn find_mapping(&self, pinned: &Coloring, from: usize, to: usize) -> Option<Permutation> {
        if pinned[from] != pinned[to] {
            return None;
        }
        let mut left = pinned.clone();
        let mut right = pinned.clone();
        individualize(&mut left, from);
        individualize(&mut right, to);
        if !refine_pair(self.g, &mut left, &mut right) {
            return None;
        }
        let mut found = None;
        self.descend(&left, &right, &mut |p| {
            found = Some(p);
            false
        });
        found
    }

    /// Depth-first over right-hand individualizations. `visit` returns
    /// `false` to stop; the return value is `false` once stopped.
    fn descend(
        &self,
        left: &Coloring,
        right: &Coloring,
        visit: &mut dyn FnMut(Permutation) -> bool,
    ) -> bool {
        let Some(color) = first_nonsingleton(left) else {
            let n = left.len();
            let mut at = vec![0usize; n];
            for (v, &c) in right.iter().enumerate() {
                at[c as usize] = v;
            }
            let p = Permutation { images: left.iter().map(|&c| at[c as usize]).collect() };
            if p.is_automorphism_of(self.g) {
                return visit(p);
            }
            return true;
        };
        let x = left.iter().position(|&c| c == color).expect("cell is non-empty");
        let mut l = left.clone();
        individualize(&mut l, x);
        for y in (0..right.len()).filter(|&y| right[y] == color) {
            let mut l2 = l.clone();
            let mut r2 = right.clone();
            individualize(&mut r2, y);
            if !refine_pair(self.g, &mut l2, &mut r2) {
                continue;
            }
            if !self.descend(&l2, &r2, visit) {
                return false;
            }
        }
        true
    }

    /// Some non-identity automorphism fixing `pins` pointwise.
    pub(crate) fn nontrivial_fixing(&self, pins: &[usize]) -> Option<Permutation> {
        let mut colors = self.pinned(pins);
        while let Some(color) = first_nonsingleton(&colors) {
            let cell: Vec<usize> = (0..colors.len()).filter(|&v| colors[v] == color).collect();
            let x = cell[0];
            for &y in &cell[1..] {
                if let Some(p) = self.find_mapping(&colors, x, y) {
                    return Some(p);
                }
            }
            // Every automorphism fixing the pins fixes `x` too.
            individualize(&mut colors, x);
            refine_single(self.g, &mut colors);
        }
        None
    }

    /// Orbits of the pointwise stabilizer of `pins`, without listing it.
    pub(crate) fn stabilizer_orbits(&self, pins: &[usize]) -> OrbitPartition {
        let colors = self.pinned(pins);
        let n = colors.len();
        let mut uf = UnionFind::new(n);
        let cells = cells_of(&colors);
        for cell in cells.iter().filter(|c| c.len() > 1) {
            let mut reps: Vec<usize> = vec![cell[0]];
            for &w in &cell[1..] {
                let rw = uf.find(w);
                if reps.iter().any(|&r| uf.root(r) == rw) {
                    continue;
                }
                let mut joined = false;
                for &r in &reps {
                    if let Some(p) = self.find_mapping(&colors, r, w) {
                        uf.union_cycles(&p);
                        joined = true;
                        break;
                    }
                }
                if !joined {
                    reps.push(w);
                }
            }
        }
        uf.into_partition()
    }

    /// Stabilizer chain along the least vertex of the first non-singleton
    /// cell at each level.
    pub(crate) fn chain(&self) -> Chain {
        let mut pins = Vec::new();
        let mut levels = Vec::new();
        loop {
            let colors = self.pinned(&pins);
            let Some(color) = first_nonsingleton(&colors) else { break };
            let cell: Vec<usize> = (0..colors.len()).filter(|&v| colors[v] == color).collect();
            let x = cell[0];
            let mut uf = UnionFind::new(colors.len());
            let mut transversal = Vec::new();
            for &y in &cell[1..] {
                if uf.find(y) == uf.find(x) {
                    continue;
                }
                if let Some(p) = self.find_mapping(&colors, x, y) {
                    uf.union_cycles(&p);
                    transversal.push(p);
                }
            }
            let orbit_len = cell.iter().filter(|&&y| uf.find(y) == uf.find(x)).count();
            levels.push(Level { base_point: x, orbit_len, found: transversal });
            pins.push(x);
        }
        Chain { degree: self.g.order(), levels }
    }

    /// Every automorphism, in search order.
    fn enumerate(&self, limit: u128) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut count: u128 = 0;
        self.descend(&self.base, &self.base, &mut |p| {
            count += 1;
            out.push(p);
            count < limit
        });
        out
    }
}

pub(crate) struct Level {
    base_point: usize,
    orbit_len: usize,
    /// Automorphisms fixing the earlier base points, found while closing
    /// the orbit of this level's base point.
    found: Vec<Permutation>,
}

pub(crate) struct Chain {
    degree: usize,
    levels: Vec<Level>,
}

impl Chain {
    pub(crate) fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit_len as u128))
    }

    /// Walks the levels bottom-up and keeps an element only when it
    /// enlarges the orbit of its level's base point under the kept set.
    pub(crate) fn generators(&self) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = Vec::new();
        for level in self.levels.iter().rev() {
            let mut orbit = orbit_of(self.degree, level.base_point, &gens);
            for p in &level.found {
                if !orbit[p.apply(level.base_point)] {
                    gens.push(p.clone());
                    orbit = orbit_of(self.degree, level.base_point, &gens);
                }
            }
        }
        gens.sort_unstable();
        gens
    }
}

fn orbit_of(n: usize, x: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        for g in gens {
            let w = g.apply(v);
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn first_nonsingleton(colors: &Coloring) -> Option<u32> {
    let mut counts = vec![0u32; colors.len()];
    for &c in colors {
        counts[c as usize] += 1;
    }
    counts.iter().position(|&k| k > 1).map(|c| c as u32)
}

fn cells_of(colors: &Coloring) -> Vec<Vec<usize>> {
    let mut cells = vec![Vec::new(); colors.len()];
    for (v, &c) in colors.iter().enumerate() {
        cells[c as usize].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

/// Gives `v` a fresh color larger than every existing one.
fn individualize(colors: &mut Coloring, v: usize) {
    colors[v] = colors.len() as u32;
}

/// Initial colors ranked by (degree, sorted neighbor degrees, sorted
/// distances to all vertices).
fn invariant_coloring(g: &Graph) -> Coloring {
    let n = g.order();
    let dist = g.distance_matrix();
    let keys: Vec<(usize, Vec<usize>, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            let mut dd = dist.row(v).to_vec();
            dd.sort_unstable();
            (g.degree(v), nd, dd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut colors = vec![0u32; n];
    let mut id = 0u32;
    for k in 0..n {
        if k > 0 && keys[order[k]] != keys[order[k - 1]] {
            id += 1;
        }
        colors[order[k]] = id;
    }
    colors
}

/// Per-vertex signature `(color, sorted neighbor colors)`, flattened, with
/// vertices sorted by signature.
struct Signatures {
    flat: Vec<u32>,
    offs: Vec<usize>,
    order: Vec<usize>,
}

impl Signatures {
    fn compute(g: &Graph, colors: &Coloring) -> Signatures {
        let n = colors.len();
        let mut flat = Vec::with_capacity(n + 2 * g.size());
        let mut offs = Vec::with_capacity(n + 1);
        offs.push(0);
        for v in 0..n {
            let start = flat.len();
            flat.push(colors[v]);
            flat.extend(g.neighbors(v).iter().map(|&w| colors[w]));
            flat[start + 1..].sort_unstable();
            offs.push(flat.len());
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| flat[offs[a]..offs[a + 1]].cmp(&flat[offs[b]..offs[b + 1]]));
        Signatures { flat, offs, order }
    }

    #[inline]
    fn sig(&self, v: usize) -> &[u32] {
        &self.flat[self.offs[v]..self.offs[v + 1]]
    }

    /// Writes canonical new colors; returns the number of colors.
    fn recolor(&self, colors: &mut Coloring) -> usize {
        let mut id = 0u32;
        for k in 0..self.order.len() {
            if k > 0 && self.sig(self.order[k]) != self.sig(self.order[k - 1]) {
                id += 1;
            }
            colors[self.order[k]] = id;
        }
        if self.order.is_empty() { 0 } else { id as usize + 1 }
    }
}

fn color_count(colors: &Coloring) -> usize {
    let mut seen = vec![false; colors.len() + 1];
    colors.iter().filter(|&&c| !core::mem::replace(&mut seen[c as usize], true)).count()
}

fn refine_single(g: &Graph, colors: &mut Coloring) {
    let mut count = color_count(colors);
    loop {
        let sigs = Signatures::compute(g, colors);
        let next = sigs.recolor(colors);
        if next == count {
            return;
        }
        count = next;
    }
}

/// Refines both colorings in lockstep. Returns `false` as soon as their
/// signature multisets differ, which rules out any automorphism mapping
/// the left coloring onto the right one.
fn refine_pair(g: &Graph, left: &mut Coloring, right: &mut Coloring) -> bool {
    let mut count = color_count(left);
    loop {
        let ls = Signatures::compute(g, left);
        let rs = Signatures::compute(g, right);
        if !ls.order.iter().zip(&rs.order).all(|(&a, &b)| ls.sig(a) == rs.sig(b)) {
            return false;
        }
        let next = ls.recolor(left);
        rs.recolor(right);
        if next == count {
            return true;
        }
        count = next;
    }
}

/// The full automorphism group with default caps.
pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    automorphism_group_with(g, &Caps::default())
}

pub fn automorphism_group_with(g: &Graph, caps: &Caps) -> Result<PermGroup> {
    caps.check_order(g)?;
    let search = Search::new(g);
    let chain = search.chain();
    let order = chain.order();
    let generators = chain.generators();
    if order > caps.max_elements {
        return Err(Error::CapExceeded {
            what: "automorphism group order",
            limit: caps.max_elements,
            partial_generators: generators,
        });
    }
    let mut elements = search.enumerate(order);
    elements.sort_unstable();
    debug_assert_eq!(elements.len() as u128, order);
    Ok(PermGroup { degree: g.order(), elements, generators })
}

/// `|Aut(G)|` from a stabilizer chain, without listing elements.
pub fn group_order(g: &Graph) -> Result<u128> {
    Caps::default().check_order(g)?;
    Ok(Search::new(g).chain().order())
}

/// A generating set of `Aut(G)`, without listing elements.
pub fn group_generators(g: &Graph) -> Result<Vec<Permutation>> {
    Caps::default().check_order(g)?;
    Ok(Search::new(g).chain().generators())
}

/// A non-identity automorphism fixing every vertex of `set`, if any.
pub fn find_automorphism_fixing(g: &Graph, set: &[usize]) -> Result<Option<Permutation>> {
    g.check_vertices(set)?;
    Ok(Search::new(g).nontrivial_fixing(set))
}

/// Orbits of the pointwise stabilizer of `set` in `Aut(G)`.
pub fn stabilizer_orbits(g: &Graph, set: &[usize]) -> Result<OrbitPartition> {
    g.check_vertices(set)?;
    Ok(Search::new(g).stabilizer_orbits(set))
}
