//! Short-vector search in lattices lifted from co-dimension-k codes over
//! Z_P^d.
//!
//! The engine sorts a working list of integer vectors by their projection
//! onto a dual codeword and applies one Euclidean step to each consecutive
//! pair, lifting the scalar update back to the vectors. Everything else in
//! the crate is built around that kernel:
//!
//! - [`projection`] — exact projection arithmetic and the pairwise step
//! - [`kblock`] — tripartite and k-party (non-Euclidean) reductions
//! - [`solver`] — the iteration engine and its boundary conditions
//! - [`codim`] — stacking co-dimension-1 runs into co-dimension-k solvers
//! - [`input_sets`] — seeded generators for every input-set family
//! - [`lattice`] — exact integer linear algebra and basis I/O
//! - [`iter_model`] — iteration-count and length prediction models
//! - [`real`] — fixed-precision reals backing the prediction formulas

pub mod codim;
pub mod error;
pub mod input_sets;
pub mod iter_model;
pub mod kblock;
pub mod lattice;
pub mod primality;
pub mod projection;
pub mod real;
pub mod solver;

pub use error::{Error, Result};
pub use projection::{CutoffRule, DualCodeword, IntVec, Modulus, ProjKind, TrackedVector};
pub use solver::{Boundary, RunReport, RunStatus, SolverConfig, Variant, WorkingList};

/// Identity of the pinned random generator, recorded in every run report.
/// Streams are split per vector index via `set_stream(index)`.
pub const GENERATOR_ID: &str = "chacha12/seed_from_u64/stream-per-vector";
