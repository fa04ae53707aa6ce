//! Tree decompositions with small per-bag clique covers for graphs with no
//! C4, diamond, theta, pyramid, prism or even wheel, and maximum weight
//! independent set over them.
//!
//! Vertices are dense ids `0..n`. Files and JSON output use 1-indexed ids.

pub mod balsep;
pub mod cover;
pub mod cutsets;
pub mod error;
pub mod gen;
pub mod graph;
pub mod hubdiv;
pub mod io;
pub mod mwis;
pub mod report;
pub mod separations;
pub mod structures;
pub mod treedec;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{Graph, Separation, VertexSet};
pub use weights::{Threshold, WeightFunction};
