use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An edge or query named a vertex outside `0..n`.
    VertexOutOfRange { vertex: usize, n: usize },
    LoopEdge(usize),
    /// A family generator or catalog entry got parameters outside its range.
    InvalidParameter(String),
    NotATree,
    Disconnected,
    SizeMismatch { expected: usize, found: usize },
    /// A search limit was hit. `partial_generators` carries whatever
    /// automorphisms were found before aborting.
    CapExceeded {
        what: &'static str,
        limit: u128,
        partial_generators: Vec<Permutation>,
    },
    UnknownTag(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph of order {n}")
            }
            Error::LoopEdge(v) => write!(f, "loop edge at vertex {v}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NotATree => f.write_str("graph is not a tree"),
            Error::Disconnected => f.write_str("graph is disconnected"),
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            Error::CapExceeded { what, limit, partial_generators } => write!(
                f,
                "{what} exceeds cap {limit} ({} generators found before abort)",
                partial_generators.len()
            ),
            Error::UnknownTag(tag) => write!(f, "unknown tag `{tag}`"),
        }
    }
}

impl core::error::Error for Error {}
