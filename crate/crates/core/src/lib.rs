//! Red and blue lines of bi-coloured 3-uniform hypergraph systems.
//!
//! A system colours every triple of an `n`-point set red or blue; the red
//! line through `u, v` is `{u, v}` plus every `p` with `{u, v, p}` red, and
//! the blue line is defined the same way. The crate enumerates these lines,
//! builds the standard families (Steiner systems, projective planes, planar
//! point sets, tree metrics, the binary-tree and composition constructions),
//! checks the known lower and upper bounds on the line counts, and searches
//! for systems with few lines at small `n`.

pub mod analysis;
pub mod error;
pub mod format;
pub mod generators;
pub mod search;
pub mod system;
pub mod treespace;

pub use error::{Error, Result};
pub use system::{
    binomial, canonical, complement, generating_pairs, line, line_size_distribution, max_red_intersection, permute,
    summarize, triple_rank, Colour, Colouring, GeneratingPairMap, LineSummary, PointSet,
};
