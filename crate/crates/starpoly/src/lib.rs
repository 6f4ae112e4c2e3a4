//! Exact graph polynomial invariants of marked and weighted multigraphs.
//!
//! The library computes the chromatic symmetric function in the star basis
//! via deletion-near-contraction, the M-, W-, V- and D-polynomials of
//! marked graphs, and reconstructs weighted stars, weighted 2-stars and
//! proper trees of diameter at most 5 from those invariants. All arithmetic
//! is exact.
//!
//! Start with the `examples/` directory: each file there is a runnable tour
//! of one capability (`cargo run --example star_expansion`, ...).

pub mod canon;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod io;
pub mod mark;
pub mod mprime;
pub mod partition;
pub mod reconstruct;
pub mod star_expansion;
pub mod symfunc;
pub mod util;
pub mod zpoly;

pub use error::{Error, Result};
pub use graph::{EdgeId, MarkedGraph, VertexId};
pub use mark::Mark;
pub use symfunc::SymFn;
pub use zpoly::ZPoly;
