//! Kirkwood-Salsburg machinery: truncated partial sums over finite
//! domains (memoized recursion plus a direct oracle), finite-domain and
//! tuple-wise condition checkers, the necessary-decay functional, and
//! the beta coefficients that certify the improved compatible-subset
//! condition.

mod beta;
mod conditions;
mod domain;
mod tn;

pub use beta::{beta_coefficient, beta_min_random, BetaSweep, QGraph, MAX_Q_VERTICES};
pub use conditions::{
    bfp_condition_check, ks_condition1_check, necessary_decay, BfpAttempt, BfpOutcome,
    Ks1Outcome, KsAnsatz, SetAnsatz, TupleWeightFn,
};
pub use domain::DomainMask;
pub use tn::{
    stabilization_probe, tn_direct, tn_direct_table, CellSelection, StabilizationOutcome,
    TnDirectTable, TnModel, TnTable,
};
