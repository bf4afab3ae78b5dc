//! Kirkwood-Salsburg machinery on finite systems: the exact partial-sum
//! recursion, the tuple-wise fixed-point inequality with the
//! product ansatz, the finite-domain condition checker, and the
//! necessary-decay functional.

use clusterkit::graphkit::{verify_ks_recursion_partial, SelectionRule};
use clusterkit::kssolver::{
    bfp_condition_check, ks_condition1_check, necessary_decay, KsAnsatz, SetAnsatz, TnModel,
};
use clusterkit::models::{AbstractPolymerSystem, DiscreteRodSystem};
use clusterkit::ratio;

fn dimer_line(polymers: usize) -> clusterkit::Result<AbstractPolymerSystem> {
    let ids: Vec<String> = (0..polymers).map(|i| format!("dimer@{i}")).collect();
    let mut pairs = Vec::new();
    for a in 0..polymers {
        if a + 1 < polymers {
            pairs.push((a, a + 1));
        }
    }
    AbstractPolymerSystem::new(ids, vec![ratio(1, 6); polymers], &pairs)
}

fn main() -> clusterkit::Result<()> {
    // Exact recursion of the sign-flipped partial sums on a dimer line.
    let system = dimer_line(4)?;
    let outcome =
        verify_ks_recursion_partial(&system, 2, 4, SelectionRule::First, 2_000_000)?;
    println!(
        "partial-sum recursion S_(N+1) = e_z + K S_N: holds = {} ({} tuple checks)",
        outcome.holds, outcome.tuples_checked
    );

    // Fixed-point inequality with the product ansatz at mu = 1.
    let ks1 = ks_condition1_check(
        &system,
        &KsAnsatz::FpProduct {
            mu: vec![1.0; system.len()],
        },
        2,
    )?;
    println!(
        "fixed-point inequality with product ansatz at z = 1/6: holds = {}",
        ks1.holds
    );

    // Finite-domain condition with the additive ansatz on dimers.
    let rods = DiscreteRodSystem::single(2)?;
    let model = TnModel::Rods(&rods);
    for z in [0.12, 0.2] {
        let out = bfp_condition_check(
            &model,
            SetAnsatz::Cardinality { alpha: 2f64.ln() },
            &[(0, 6)],
            5,
            z,
            1_000_000,
        )?;
        println!(
            "domain condition at z = {z} with a(D) = |D| ln 2: holds = {} ({} domains)",
            out.holds, out.domains_checked
        );
    }

    // Necessary decay of the activity in the polymer size.
    for z in [0.0, 0.1, 0.25] {
        println!(
            "necessary-decay sum at z = {z}: {:.6}",
            necessary_decay(&model, &vec![0], z)?
        );
    }
    Ok(())
}
