//! Graph rewiring toward expanders by local, degree-preserving edge flips.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`graph`]: a simple undirected graph with sorted adjacency lists and
//!   breadth-first traversal helpers.
//! - [`generators`]: the bottlenecked benchmark families (dumbbell,
//!   ring-of-cliques, path-of-cliques) plus paths, cycles, complete graphs and
//!   random regular graphs.
//! - [`spectral`]: adjacency spectrum, normalized spectral gap, exact and
//!   spectral Cheeger estimates, triangle counts.
//! - [`resistance`]: effective resistance through the Laplacian pseudoinverse.
//! - [`transport`] and [`curvature`]: exact 1-Wasserstein distances over the
//!   graph metric and Ollivier-Ricci curvature.
//! - [`rewiring`]: random local edge flips (uniform and greedy) and a
//!   curvature-driven add/remove baseline, with a trace-recording driver.
//! - [`info`]: strong data processing quantities for binary symmetric
//!   channels and exact mutual information of noisy Boolean tree circuits.
#![no_std]

extern crate alloc;

pub mod curvature;
pub mod error;
pub mod generators;
pub mod graph;
pub mod info;
pub mod resistance;
pub mod rewiring;
pub mod rng;
pub mod spectral;
pub mod transport;

pub use error::{Error, Result};
pub use generators::{generate, GeneratorSpec};
pub use graph::Graph;
pub use rng::RngStream;
