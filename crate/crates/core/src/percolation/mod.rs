//! Site percolation: reproducible sampling, cluster labelling, Monte Carlo
//! estimators and an exact enumeration oracle.
//!
//! A closed vertex has an empty cluster, so `tau(u, v)` requires both
//! endpoints open and `tau(v, v) = P(v open) = p`.

mod clusters;
mod estimate;
mod exact;
pub mod rng;
pub mod stats;

pub use clusters::{label_clusters, sample, ClusterLabeling, Configuration, DisjointSets};
pub use estimate::{
    estimate_chi, estimate_many, estimate_tau, estimate_tau_pairs, estimate_theta_proxy,
    MonteCarlo, PercolationEstimate, Quantity,
};
pub use exact::{exact_chi, exact_reach, exact_tau, exact_tau_table, ExactError, MAX_EXACT_VERTICES};
