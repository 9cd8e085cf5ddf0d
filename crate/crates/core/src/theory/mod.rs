//! Closed-form quantities behind the critical-value bounds, plus the two
//! constructive objects used by the proofs: a block partition of any connected
//! puzzle and an interval cut certificate for ring puzzles.

mod blocks;
mod bounds;
mod certificate;
mod theta;

pub use blocks::{block_partition, BlockPartition, BlockViolation};
pub use bounds::{
    lower_bound_pc_ring, not_x_good_bound, ring_lower_objective, ring_objective_grid_max,
    upper_bound_pc, LOWER_RING_CONSTANT,
};
pub use certificate::{find_cut_certificate, interval_boundaries, CutCertificate};
pub use theta::{theta, theta_sum_error_bound, ThetaSumBound, PI2_6};
