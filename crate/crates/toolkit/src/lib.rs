//! File formats, the claim-verification suite and the command-line front
//! end for fixing numbers of functigraphs.

pub mod cli;
pub mod format;
pub mod suite;

pub use functigraph_core as core;
