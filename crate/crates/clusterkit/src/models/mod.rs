//! Concrete polymer universes and the geometric functionals the
//! convergence criteria consume.

mod abstract_system;
mod balls;
mod intervals;
mod lattice;
mod rods;

pub use abstract_system::{
    rational_to_f64, AbstractPolymerSystem, CompatibleSubset, NeighborhoodSummary,
    DEFAULT_SUBSET_CAP,
};
pub use balls::{ball_volume, unit_ball_volume, BallSystem};
pub use intervals::vr_intervals;
pub use lattice::{Cell, LatticeShapeModel, SubadditivityOutcome};
pub use rods::{ContinuousRodSystem, DiscreteRodSystem};
