//! Proximal operators and the primal-dual splitting solver.

mod pds;
mod prox;

pub use pds::{
    constraint_residuals, objective, pds_solve, project_feasible, OrthogonalityBasis, SolveResult,
    SolverConfig, M_NORM_SQ_BOUND,
};
pub use prox::{
    prox_conjugate, prox_slab, prox_sphere, soft_threshold, L1Norm, Proximable, SlabIndicator,
};
