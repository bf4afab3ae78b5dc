//! Convergence criteria: supremal activity bounds, closed forms, and
//! feasibility checks at concrete ansatz parameters.

mod bounds;
mod feasibility;
mod optimize;
mod report;

pub use bounds::{
    evaluate, fp_bound, gk_bound, gk_cont_bound, hardsphere_bound, hypercube_closed_form,
    kp_bound, lgoof_bound, new_bound, tonks_continuous_bound, tonks_discrete_bound,
    tonks_radius_fixed_point, ModelRef, NeighborhoodProfile,
};
pub use feasibility::{feasibility, AnsatzSpec};
pub use optimize::{optimize_scalar, OptimizeOptions, OptimizerDiagnostics, ScalarMax};
pub use report::{CriterionId, CriterionReport, FeasibilityVerdict};
