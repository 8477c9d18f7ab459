//! Symmetry invariants of small graphs and their functigraphs.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational:
//! graphs are immutable values, and every operation is a function of its
//! arguments. File formats, reporting and the command line live in the
//! `functigraph` companion crate.
//!
//! * [`graph`] builds graphs, the named families and structural queries.
//! * [`perm`] computes automorphism groups, orbits and stabilizers.
//! * [`fixing`] finds minimum fixing sets.
//! * [`resolving`] finds minimum resolving sets (metric dimension).
//! * [`functigraph`] builds `F_G` from a graph and a vertex function.
//! * [`predict`] holds the closed-form fixing-number predictors.
//! * [`enumerate`] generates exhaustive instance streams.

#![no_std]

extern crate alloc;

pub mod enumerate;
pub mod error;
pub mod fixing;
pub mod functigraph;
pub mod graph;
pub mod perm;
pub mod predict;
pub mod resolving;

pub use error::{Error, Result};
pub use fixing::{fixing_number, is_fixing_set, min_fixing_set, twin_lower_bound, FixingResult};
pub use functigraph::{build_functigraph, PreimageProfile, VertexFunction};
pub use graph::{FamilySpec, Graph, TwinPartition};
pub use perm::{Caps, OrbitPartition, PermGroup, Permutation};
pub use resolving::{is_resolving_set, metric_dimension, ResolvingResult};
