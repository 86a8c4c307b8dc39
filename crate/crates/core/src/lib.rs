//! Graph Laplacians read as quantum states.
//!
//! A graph `G` with `m ≥ 1` edges gives the density matrix
//! `σ(G) = L(G) / d_G`. This crate builds these matrices exactly over the
//! rationals, computes spectra and entropies, tests bipartite separability
//! through the partial transpose, evaluates two-qubit concurrence, and
//! simulates graph edits as Kraus channels.

pub mod error;
pub mod graph;
pub mod linalg;
pub mod density;
pub mod entropy;
pub mod separability;
pub mod concurrence;
pub mod channels;
pub mod cli;

pub use error::{Error, Result};
pub use graph::{parse_graph, Graph, VertexPermutation};
pub use linalg::{HermitianMatrix, Rational, RationalMatrix, SpectrumResult};
