//! Closed-form fixing numbers of functigraphs of complete graphs and of
//! complete graphs with a matching removed.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functigraph::PreimageProfile;

/// `fix(F_{K_n})` for a function with the given preimage profile, where
/// `s = |g(A)|` satisfies `1 < s < n`. With `j` image vertices hit exactly
/// once the value is `2(n - s) - 1` when `j <= 1` and `2n - 2s + j - 2`
/// otherwise.
pub fn predicted_fix_kn(n: usize, profile: &PreimageProfile) -> Result<usize> {
    let s = profile.image_size();
    if n < 3 || profile.total() != n {
        return Err(Error::InvalidParameter(format!(
            "profile {profile} does not describe a function on K_{n} with n >= 3"
        )));
    }
    if s <= 1 || s >= n {
        return Err(Error::InvalidParameter(format!("image size {s} outside 1 < s < {n}")));
    }
    let j = profile.singletons();
    Ok(if j <= 1 { 2 * (n - s) - 1 } else { 2 * n - 2 * s + j - 2 })
}

/// `[2(n - s) - 1, 2n - s - 3]`, the range [`predicted_fix_kn`] lies in.
pub fn kn_bounds(n: usize, s: usize) -> (usize, usize) {
    (2 * (n - s) - 1, 2 * n - s - 3)
}

/// Which B-vertex a constant function on `K_n - iK_2` targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImageKind {
    /// An endpoint of a deleted matching edge.
    Twin,
    /// A vertex still adjacent to every other vertex.
    Saturated,
    /// Only allowed where the value does not depend on the target.
    NotApplicable,
}

impl ImageKind {
    pub fn name(self) -> &'static str {
        match self {
            ImageKind::Twin => "twin",
            ImageKind::Saturated => "saturated",
            ImageKind::NotApplicable => "n.a.",
        }
    }

    /// The target vertex used for this kind under the labeling of
    /// [`crate::graph::FamilySpec::CompleteMinusMatching`]: `0` for a twin,
    /// `n - 1` for a saturated vertex (which exists iff `2i < n`).
    pub fn target(self, n: usize, i: usize) -> Option<usize> {
        match self {
            ImageKind::Twin => Some(0),
            ImageKind::Saturated => (2 * i < n).then_some(n - 1),
            ImageKind::NotApplicable => None,
        }
    }
}

/// `fix(F_{G_i})` for `G_i = K_n` minus `i` disjoint edges and a constant
/// function.
pub fn predicted_fix_kn_minus_matching(n: usize, i: usize, kind: ImageKind) -> Result<usize> {
    if n < 3 || i < 1 || i > n / 2 {
        return Err(Error::InvalidParameter(format!("need n >= 3 and 1 <= i <= n/2, got n={n}, i={i}")));
    }
    let half = n / 2;
    if i < half {
        return Ok(2 * n - 2 * i - 3);
    }
    if n.is_multiple_of(2) {
        return match kind {
            ImageKind::Saturated => Err(Error::InvalidParameter(format!(
                "K_{n} minus a perfect matching has no saturated vertex"
            ))),
            _ => Ok(n - 1),
        };
    }
    match kind {
        ImageKind::Twin => Ok(2 * half - 1),
        ImageKind::Saturated => Ok(2 * half),
        ImageKind::NotApplicable => Err(Error::InvalidParameter(format!(
            "n={n} odd with i={i} needs the image kind"
        ))),
    }
}

/// Orders `m` of complete graphs for which some function with `s` images
/// gives `fix(K_m) = fix(F_{K_m})`: `s + 2, ..., 2s`.
pub fn equality_complete_graphs(s: usize) -> Result<Vec<usize>> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("need s >= 2, got {s}")));
    }
    Ok((s + 2..=2 * s).collect())
}
