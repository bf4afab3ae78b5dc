//! Cluster-expansion machinery for hard-core polymer systems.
//!
//! The crate is organized around five subsystems:
//!
//! * [`graphkit`] — exact enumeration of graphs, connected graphs,
//!   multi-rooted graphs and rooted forests; Mayer weights, Ursell
//!   functions and the multi-rooted coefficients `psi`, all in exact
//!   rational arithmetic.
//! * [`models`] — concrete polymer universes: finite abstract polymer
//!   systems, translation-invariant subset polymers on `Z^d`, hard rods
//!   and hard balls, plus the geometric functionals the convergence
//!   criteria consume.
//! * [`criteria`] — evaluation and optimization of the convergence
//!   criteria (Kotecky-Preiss, Fernandez-Procacci, Gruber-Kunz style
//!   bounds, lattice and continuum closed forms, Tonks-gas radii).
//! * [`kssolver`] — Kirkwood-Salsburg machinery made executable:
//!   truncated partial sums over finite domains with a memoized
//!   single-cell recursion, an independent direct-sum oracle,
//!   condition checkers, and the `beta` coefficients.
//! * [`cli`] — the command-line surface (`criteria`, `verify`, `tn`,
//!   `beta`) with JSON/CSV reports.
//!
//! Every identity check runs in exact rational arithmetic
//! ([`num::BigRational`]); floating point appears only in criterion
//! optimization and geometry.

#![forbid(unsafe_code)]

pub mod cli;
pub mod criteria;
pub mod error;
pub mod graphkit;
pub mod kssolver;
pub mod models;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the combinatorics core.
pub type Rational = num::BigRational;

/// Convenience constructor for small rationals.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
