//! Functigraphs and the catalog of named vertex functions.
//!
//! For a graph `G` on `n` vertices and a function `g` from one copy `A` of
//! `V(G)` to another copy `B`, the functigraph `F_G` has vertex ids
//! `0..n` for `A`, `n..2n` for `B`, both copies' edges, and an edge
//! `{u, n + g(u)}` for every `u` in `A`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{FamilySpec, Graph};
use crate::perm::Permutation;

/// A total function `A -> B`, with images in B-local ids `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexFunction {
    images: Vec<usize>,
}

impl VertexFunction {
    pub fn new(n: usize, images: Vec<usize>) -> Result<VertexFunction> {
        if images.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: images.len() });
        }
        if let Some(&bad) = images.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        Ok(VertexFunction { images })
    }

    pub fn constant(n: usize, target: usize) -> Result<VertexFunction> {
        VertexFunction::new(n, vec![target; n])
    }

    pub fn identity(n: usize) -> VertexFunction {
        VertexFunction { images: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, u: usize) -> usize {
        self.images[u]
    }

    /// `s = |g(A)|`.
    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.n()];
        self.images.iter().filter(|&&v| !core::mem::replace(&mut seen[v], true)).count()
    }

    pub fn preimage_profile(&self) -> PreimageProfile {
        let mut counts = vec![0usize; self.n()];
        for &v in &self.images {
            counts[v] += 1;
        }
        counts.retain(|&c| c > 0);
        counts.sort_unstable_by(|a, b| b.cmp(a));
        PreimageProfile { parts: counts }
    }

    /// `g ∘ alpha`.
    pub fn precompose(&self, alpha: &Permutation) -> Result<VertexFunction> {
        if alpha.degree() != self.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: alpha.degree() });
        }
        Ok(VertexFunction { images: (0..self.n()).map(|u| self.images[alpha.apply(u)]).collect() })
    }

    /// Every function on `n` points, `images` read as base-`n` digits with
    /// the last entry varying fastest.
    pub fn all(n: usize) -> impl Iterator<Item = VertexFunction> {
        let total = if n == 0 { 1 } else { n.pow(n as u32) };
        (0..total).map(move |mut code| {
            let mut images = vec![0; n];
            for slot in images.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            VertexFunction { images }
        })
    }
}

/// Space-separated image list, the function file format.
impl fmt::Display for VertexFunction {
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

pub fn image_size(g: &VertexFunction) -> usize {
    g.image_size()
}

pub fn preimage_profile(g: &VertexFunction) -> PreimageProfile {
    g.preimage_profile()
}

/// Preimage counts of the image vertices, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreimageProfile {
    parts: Vec<usize>,
}

impl PreimageProfile {
    pub fn new(mut parts: Vec<usize>) -> Result<PreimageProfile> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "profile parts must be positive and non-empty: {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PreimageProfile { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Domain size `n`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Image size `s`.
    pub fn image_size(&self) -> usize {
        self.parts.len()
    }

    /// `j`: number of image vertices with exactly one preimage.
    pub fn singletons(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    /// Every profile of `n` with exactly `s` parts, in descending
    /// lexicographic order.
    pub fn all_with_parts(n: usize, s: usize) -> Vec<PreimageProfile> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        partitions(n, s, n, &mut current, &mut out);
        out
    }

    /// The canonical function realizing this profile: B-vertex `k` takes
    /// the next `parts[k]` A-vertices in id order.
    pub fn realize(&self) -> VertexFunction {
        let mut images = Vec::with_capacity(self.total());
        for (k, &p) in self.parts.iter().enumerate() {
            images.extend(core::iter::repeat_n(k, p));
        }
        VertexFunction { images }
    }
}

/// Comma-separated parts, in any order.
impl FromStr for PreimageProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<PreimageProfile> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("malformed profile `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        PreimageProfile::new(parts)
    }
}

fn partitions(n: usize, s: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<PreimageProfile>) {
    if s == 0 {
        if n == 0 {
            out.push(PreimageProfile { parts: cur.clone() });
        }
        return;
    }
    if n < s {
        return;
    }
    for p in (1..=max.min(n - (s - 1))).rev() {
        cur.push(p);
        partitions(n - p, s - 1, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for PreimageProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// `F_G` on `2n` vertices with exactly `2m + n` edges.
pub fn build_functigraph(g: &Graph, f: &VertexFunction) -> Result<Graph> {
    let n = g.order();
    if f.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: f.n() });
    }
    let mut edges = Vec::with_capacity(2 * g.size() + n);
    edges.extend_from_slice(g.edges());
    edges.extend(g.edges().iter().map(|&(a, b)| (a + n, b + n)));
    edges.extend((0..n).map(|u| (u, n + f.apply(u))));
    Graph::new(2 * n, &edges)
}

/// A named construction: a host graph with one explicit function on it.
///
/// The pendant-pair-tree entries use the labels of
/// [`FamilySpec::PendantPairTree`]; `v(i)`, `u(i)`, `w(i)` below are
/// 1-based positions along the spine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Construction {
    /// `fix(G) = t = fix(F_G)` on the pendant-pair tree of order `3t`.
    /// `v(i) -> v(i)`; odd `i`: `u(i) -> v(i)`, `w(i) -> w(i)`; even `i`:
    /// `u(i), w(i) -> v(i)`; for odd `t` the last pair goes to
    /// `v(t-2)`, `w(t-2)`.
    EqualFix(usize),
    /// `fix(G) = t`, `fix(F_G) = t + 1`. Even `t` needs `t >= 4`.
    SuccessorFix(usize),
    /// `fix(G) + fix(F_G) = t`: identity on `P_3` for `t = 2`, otherwise
    /// the pendant-pair tree with spine `t - 1`.
    SumFix(usize),
    /// `fix(G) - fix(F_G) = t`, spine `t + 1`, same mapping pattern as
    /// [`Construction::SumFix`].
    DifferenceFix(usize),
    /// `fix(F_G) - fix(G) = t`: every vertex of spine position `i` maps to
    /// `v(i)`.
    ReverseDifferenceFix(usize),
    /// `K_n` with the canonical function of a profile.
    CompleteProfile(PreimageProfile),
    /// A function on `K_order` with `s` images and `fix(K) = fix(F)`:
    /// variant 1 has profile `(3, 2^i, 1^(s-1-i))` with
    /// `i = order - s - 2`; variant 2 is `(2^s)` and exists only for
    /// `order = 2s`.
    CompleteEquality { s: usize, order: usize, variant: usize },
    /// `K_n` with every vertex mapped to `0`.
    CompleteConstant(usize),
}

impl Construction {
    pub fn host(&self) -> FamilySpec {
        match *self {
            Construction::EqualFix(t)
            | Construction::SuccessorFix(t)
            | Construction::ReverseDifferenceFix(t) => FamilySpec::PendantPairTree(t),
            Construction::SumFix(2) => FamilySpec::Path(3),
            Construction::SumFix(t) => FamilySpec::PendantPairTree(t.saturating_sub(1)),
            Construction::DifferenceFix(t) => FamilySpec::PendantPairTree(t + 1),
            Construction::CompleteProfile(ref p) => FamilySpec::Complete(p.total()),
            Construction::CompleteEquality { order, .. } => FamilySpec::Complete(order),
            Construction::CompleteConstant(n) => FamilySpec::Complete(n),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        self.function()?;
        self.host().generate()
    }

    /// The functigraph of the host under this function.
    pub fn functigraph(&self) -> Result<Graph> {
        build_functigraph(&self.graph()?, &self.function()?)
    }

    pub fn function(&self) -> Result<VertexFunction> {
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("{self}: {msg}")));
        match *self {
            Construction::EqualFix(t) => {
                if t < 2 {
                    return bad("needs t >= 2");
                }
                Ok(spine_function(t, |i, m| {
                    if i % 2 == 0 {
                        m.collapse(i, i)
                    } else if i < t || t % 2 == 0 {
                        m.split(i, i)
                    } else {
                        m.split(i, t - 2)
                    }
                }))
            }
            Construction::SuccessorFix(t) => {
                if t < 3 {
                    return bad("needs t >= 3 (the even case refers to v(t-3))");
                }
                Ok(spine_function(t, |i, m| {
                    if t % 2 == 0 {
                        if i == t {
                            m.split(i, t - 3)
                        } else if i == t - 1 || i % 2 == 0 {
                            m.collapse(i, i)
                        } else {
                            m.split(i, i)
                        }
                    } else if i == t || i % 2 == 0 {
                        m.collapse(i, i)
                    } else {
                        m.split(i, i)
                    }
                }))
            }
            Construction::SumFix(2) => Ok(VertexFunction::identity(3)),
            Construction::SumFix(t) => {
                if t < 2 {
                    return bad("needs t >= 2");
                }
                Ok(shifted_last_pair(t - 1))
            }
            Construction::DifferenceFix(t) => {
                if t < 2 {
                    return bad("needs t >= 2");
                }
                Ok(shifted_last_pair(t + 1))
            }
            Construction::ReverseDifferenceFix(t) => {
                if t < 2 {
                    return bad("needs t >= 2");
                }
                Ok(spine_function(t, |i, m| m.collapse(i, i)))
            }
            Construction::CompleteProfile(ref p) => Ok(p.realize()),
            Construction::CompleteEquality { s, order, variant } => {
                if s < 2 || order < s + 2 || order > 2 * s {
                    return bad("needs s >= 2 and s + 2 <= order <= 2s");
                }
                let parts = match variant {
                    1 => {
                        let pairs = order - s - 2;
                        let mut parts = vec![3];
                        parts.extend(core::iter::repeat_n(2, pairs));
                        parts.extend(core::iter::repeat_n(1, s - 1 - pairs));
                        parts
                    }
                    2 if order == 2 * s => vec![2; s],
                    _ => return bad("variant 2 exists only for order = 2s"),
                };
                Ok(PreimageProfile::new(parts)?.realize())
            }
            Construction::CompleteConstant(n) => {
                if n < 1 {
                    return bad("needs n >= 1");
                }
                VertexFunction::constant(n, 0)
            }
        }
    }
}

/// Mapping helper over a pendant-pair tree with spine length `t`.
struct SpineMap {
    t: usize,
    images: Vec<usize>,
}

impl SpineMap {
    fn v(&self, i: usize) -> usize {
        i - 1
    }
    fn u(&self, i: usize) -> usize {
        self.t + i - 1
    }
    fn w(&self, i: usize) -> usize {
        2 * self.t + i - 1
    }

    /// `u(i) -> v(j)`, `w(i) -> w(j)`.
    fn split(&mut self, i: usize, j: usize) {
        let (u, w, vj, wj) = (self.u(i), self.w(i), self.v(j), self.w(j));
        self.images[u] = vj;
        self.images[w] = wj;
    }

    /// `u(i), w(i) -> v(j)`.
    fn collapse(&mut self, i: usize, j: usize) {
        let (u, w, vj) = (self.u(i), self.w(i), self.v(j));
        self.images[u] = vj;
        self.images[w] = vj;
    }
}

/// Spine vertices map to their own copies; `pendants(i, map)` places the
/// pendants of spine position `i`.
fn spine_function(t: usize, mut pendants: impl FnMut(usize, &mut SpineMap)) -> VertexFunction {
    let mut map = SpineMap { t, images: vec![0; 3 * t] };
    for i in 1..=t {
        let v = map.v(i);
        map.images[v] = v;
        pendants(i, &mut map);
    }
    VertexFunction { images: map.images }
}

/// Pendants split onto their own copies, except the last pair which goes
/// to `v(t-1)`, `w(t-1)`.
fn shifted_last_pair(t: usize) -> VertexFunction {
    spine_function(t, |i, m| m.split(i, if i == t { t - 1 } else { i }))
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::EqualFix(t) => write!(f, "equal-fix:{t}"),
            Construction::SuccessorFix(t) => write!(f, "successor-fix:{t}"),
            Construction::SumFix(t) => write!(f, "sum-fix:{t}"),
            Construction::DifferenceFix(t) => write!(f, "difference-fix:{t}"),
            Construction::ReverseDifferenceFix(t) => write!(f, "reverse-difference-fix:{t}"),
            Construction::CompleteProfile(p) => write!(f, "complete-profile:{p}"),
            Construction::CompleteEquality { s, order, variant } => {
                write!(f, "complete-equality:{s},{order},{variant}")
            }
            Construction::CompleteConstant(n) => write!(f, "complete-constant:{n}"),
        }
    }
}

/// Parses `tag:p[,p...]`.
impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Construction> {
        let bad = || Error::InvalidParameter(format!("malformed catalog spec `{s}`"));
        let (tag, params) = s.trim().split_once(':').ok_or_else(bad)?;
        let params = params
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let one = |make: fn(usize) -> Construction| match params[..] {
            [t] => Ok(make(t)),
            _ => Err(bad()),
        };
        match tag.trim() {
            "equal-fix" => one(Construction::EqualFix),
            "successor-fix" => one(Construction::SuccessorFix),
            "sum-fix" => one(Construction::SumFix),
            "difference-fix" => one(Construction::DifferenceFix),
            "reverse-difference-fix" => one(Construction::ReverseDifferenceFix),
            "complete-constant" => one(Construction::CompleteConstant),
            "complete-profile" => Ok(Construction::CompleteProfile(PreimageProfile::new(params)?)),
            "complete-equality" => match params[..] {
                [s, order, variant] => Ok(Construction::CompleteEquality { s, order, variant }),
                _ => Err(bad()),
            },
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

pub fn catalog_function(c: &Construction) -> Result<VertexFunction> {
    c.function()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::family;

    fn vf(images: &[usize]) -> VertexFunction {
        VertexFunction::new(images.len(), images.to_vec()).unwrap()
    }

    #[test]
    fn build_examples() {
        let p2 = family("path:2").unwrap();
        let tri = build_functigraph(&p2, &VertexFunction::constant(2, 0).unwrap()).unwrap();
        assert_eq!(tri.edges(), &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        let c4 = build_functigraph(&p2, &VertexFunction::identity(2)).unwrap();
        assert_eq!(c4.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!((0..4).all(|v| c4.degree(v) == 2));
        let p3 = family("path:3").unwrap();
        let mirrored = build_functigraph(&p3, &vf(&[0, 0, 2])).unwrap();
        assert_eq!(crate::perm::group_order(&mirrored).unwrap(), 2);
        let rigid = build_functigraph(&p3, &vf(&[0, 0, 1])).unwrap();
        assert_eq!(crate::perm::group_order(&rigid).unwrap(), 1);
    }

    #[test]
    fn build_rejects_size_mismatch() {
        let p3 = family("path:3").unwrap();
        assert_eq!(
            build_functigraph(&p3, &VertexFunction::identity(2)),
            Err(Error::SizeMismatch { expected: 3, found: 2 })
        );
        assert!(VertexFunction::new(3, vec![0, 3, 1]).is_err());
        assert!(VertexFunction::new(3, vec![0, 1]).is_err());
    }

    #[test]
    fn image_size_examples() {
        assert_eq!(VertexFunction::constant(4, 2).unwrap().image_size(), 1);
        assert_eq!(VertexFunction::identity(5).image_size(), 5);
        assert_eq!(vf(&[0, 0, 2]).image_size(), 2);
    }

    #[test]
    fn profile_examples() {
        assert_eq!(VertexFunction::constant(5, 1).unwrap().preimage_profile().parts(), &[5]);
        assert_eq!(vf(&[0, 0, 1, 1, 2]).preimage_profile().parts(), &[2, 2, 1]);
        assert_eq!(VertexFunction::identity(4).preimage_profile().parts(), &[1, 1, 1, 1]);
        let p = vf(&[3, 0, 3, 3, 1]).preimage_profile();
        assert_eq!((p.total(), p.image_size(), p.singletons()), (5, 3, 2));
        assert_eq!("1, 3,2".parse::<PreimageProfile>().unwrap().parts(), &[3, 2, 1]);
        assert!("3,0".parse::<PreimageProfile>().is_err());
        assert!("3,x".parse::<PreimageProfile>().is_err());
    }

    #[test]
    fn partitions_are_complete() {
        let all: Vec<_> = PreimageProfile::all_with_parts(6, 3)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(all, [vec![4, 1, 1], vec![3, 2, 1], vec![2, 2, 2]]);
        // p(8) = 22 partitions in total.
        let total: usize = (1..=8).map(|s| PreimageProfile::all_with_parts(8, s).len()).sum();
        assert_eq!(total, 22);
    }

    #[test]
    fn all_functions_counts() {
        assert_eq!(VertexFunction::all(3).count(), 27);
        let fs: Vec<_> = VertexFunction::all(2).map(|f| f.images().to_vec()).collect();
        assert_eq!(fs, [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn catalog_examples() {
        // t = 2: v(1), v(2) fixed; u(1) -> v(1), w(1) -> w(1); u(2), w(2) -> v(2).
        let f = Construction::EqualFix(2).function().unwrap();
        assert_eq!(f.images(), &[0, 1, 0, 1, 4, 1]);
        let p = PreimageProfile::new(vec![2, 2]).unwrap();
        assert_eq!(Construction::CompleteProfile(p).function().unwrap().images(), &[0, 0, 1, 1]);
        let menu = Construction::CompleteEquality { s: 2, order: 4, variant: 1 };
        assert_eq!(menu.function().unwrap().images(), &[0, 0, 0, 1]);
        let menu = Construction::CompleteEquality { s: 4, order: 7, variant: 1 };
        assert_eq!(menu.function().unwrap().images(), &[0, 0, 0, 1, 1, 2, 3]);
    }

    #[test]
    fn catalog_odd_and_successor_shapes() {
        // t = 3: u(3) -> v(1), w(3) -> w(1).
        let f = Construction::EqualFix(3).function().unwrap();
        assert_eq!(f.images(), &[0, 1, 2, 0, 1, 0, 6, 1, 6]);
        // Even t = 4: u(3), w(3) -> v(3); u(4) -> v(1), w(4) -> w(1).
        let f = Construction::SuccessorFix(4).function().unwrap();
        assert_eq!(f.images(), &[0, 1, 2, 3, 0, 1, 2, 0, 8, 1, 2, 8]);
        assert!(Construction::SuccessorFix(2).function().is_err());
        let f = Construction::ReverseDifferenceFix(2).function().unwrap();
        assert_eq!(f.images(), &[0, 1, 0, 1, 0, 1]);
        let f = Construction::SumFix(3).function().unwrap();
        assert_eq!(f.images(), &[0, 1, 0, 0, 4, 4]);
    }

    #[test]
    fn catalog_rejects_bad_params() {
        assert!(Construction::EqualFix(1).function().is_err());
        assert!(Construction::CompleteEquality { s: 3, order: 7, variant: 1 }.function().is_err());
        assert!(Construction::CompleteEquality { s: 3, order: 5, variant: 2 }.function().is_err());
        assert!(matches!("nope:3".parse::<Construction>(), Err(Error::UnknownTag(_))));
        assert!("equal-fix".parse::<Construction>().is_err());
    }

    #[test]
    fn catalog_round_trip() {
        for s in ["equal-fix:3", "complete-profile:3,2,1", "complete-equality:4,8,2", "sum-fix:2"] {
            assert_eq!(s.parse::<Construction>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn profile_functions_have_profile_image_size() {
        for n in 2..9 {
            for s in 1..=n {
                for p in PreimageProfile::all_with_parts(n, s) {
                    let f = p.realize();
                    assert_eq!(f.image_size(), s);
                    assert_eq!(f.preimage_profile(), p);
                }
            }
        }
    }
}
