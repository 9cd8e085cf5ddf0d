//! Experiments, file formats and the command line for jigsaw percolation.
//!
//! The algorithms live in [`jigsaw_core`]; this crate adds what needs `std`:
//!
//! - [`io`]: edge-list files and graph spec strings such as `cycle:1000`.
//! - [`experiments`]: parallel, seed-reproducible Monte Carlo sweeps and
//!   critical-value estimates.
//! - [`report`]: CSV and JSON-lines output.
//! - [`cli`]: the `jigsaw` binary.

pub use jigsaw_core as core;

pub mod cli;
pub mod error;
pub mod experiments;
pub mod io;
pub mod report;

pub use error::{Error, Result};
