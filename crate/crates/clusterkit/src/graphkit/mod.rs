//! Exact graph combinatorics: enumeration of graph classes, Mayer
//! weights, Ursell functions, multi-rooted coefficients, the Penrose
//! forest scheme, and the Kirkwood-Salsburg partial-sum identity.

mod config;
mod forest;
mod graphs;
mod ks;
mod ursell;

pub use config::PointConfig;
pub use forest::{
    enumerate_forests, penrose_closure, penrose_forest, verify_forest_graph_equality,
    verify_partition_scheme, ForestGraphComparison, RootedForest,
};
pub use graphs::{
    enumerate_graphs, graph_weight, pair_slot, GraphClass, GraphOnN, MAX_BRUTE_VERTICES,
};
pub use ks::{verify_ks_recursion_partial, KsRecursionOutcome, DEFAULT_TERM_CAP};
pub use ursell::{
    alternating_sign_check, psi, psi_reduced, ursell, ursell_table, PsiMethod, SelectionRule,
    UrsellMethod, MAX_RECURRENCE_VERTICES,
};
