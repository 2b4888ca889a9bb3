//! Spectral clustering of time-varying graphs with a label-smoothness prior.
//!
//! Each frame gets a cluster vector constrained to the sphere `‖c_t‖² = N`
//! and (nearly) orthogonal to the all-ones direction; an ℓ1 penalty on
//! frame-to-frame differences keeps labels from flickering. The nonconvex
//! problem is attacked with a primal-dual splitting iteration
//! ([`solver::pds_solve`]), and `k > 2` clusters are obtained by
//! sequential deflation ([`clustering::tv_cluster_multi`]).

pub mod clustering;
pub mod eigen;
mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod labels;
pub mod metrics;
pub mod pointcloud;
pub mod solver;
pub mod temporal;

pub use error::{Error, Result};
pub use graph::{build_laplacian, quadratic_form, Laplacian, TVGraphSequence, WeightedGraph};
pub use labels::LabelSequence;
pub use temporal::{temporal_diff, temporal_diff_adjoint, StackedVector};
