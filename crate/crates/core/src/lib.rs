//! Jigsaw percolation on finite graphs.
//!
//! Two graphs share one vertex set: a *people* graph (who talks to whom) and a
//! *puzzle* graph (which pieces fit together). Clusters of vertices merge when
//! they are adjacent in both graphs; the people graph *solves* the puzzle when
//! everything ends up in a single cluster.
//!
//! This crate is `no_std` and only needs `alloc`. It holds the pure parts:
//!
//! - [`graph`]: immutable simple graphs in compressed sorted adjacency form.
//! - [`generators`]: seeded puzzle and people graph families.
//! - [`engine`]: synchronous round-by-round dynamics, a contraction engine
//!   reaching the same fixed point, and the adjacent-edge rule variant.
//! - [`theory`]: closed-form bounds, the block partition of a connected graph
//!   and the interval cut certificate for ring puzzles.
//! - [`stats`]: binomial confidence intervals and running moments.
//!
//! File formats, parallel Monte Carlo and the command line live in the `jigsaw`
//! crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dsu;
pub mod engine;
pub mod error;
pub mod generators;
pub mod graph;
pub mod rng;
pub mod stats;
pub mod theory;

pub use dsu::DisjointSets;
pub use engine::{ClusterState, JigsawInstance, MergeRule, TrialOutcome};
pub use error::{Error, Result};
pub use graph::Graph;
pub use rng::Seed;
