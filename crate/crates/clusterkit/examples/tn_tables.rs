//! Truncated partial sums of a single site under hard dimers: the
//! peeling recursion against the direct tuple sums, and the
//! stabilization probe on either side of the exact radius 1/4.

use clusterkit::kssolver::{
    stabilization_probe, tn_direct, DomainMask, StabilizationOutcome, TnModel, TnTable,
};
use clusterkit::models::{rational_to_f64, DiscreteRodSystem};
use clusterkit::ratio;

fn main() -> clusterkit::Result<()> {
    let dimers = DiscreteRodSystem::single(2)?;
    let site = DomainMask::new(1, &[vec![0]])?;

    let z = ratio(1, 10);
    let mut table = TnTable::new(TnModel::Rods(&dimers), z.clone())?;
    println!("T_N({{0}}; 1/10) for hard dimers:");
    println!("  N  recursion        direct");
    for n in 1..=8 {
        let rec = table.value(&site, n)?;
        let dir = tn_direct(&TnModel::Rods(&dimers), &site, n, &z)?;
        assert_eq!(rec, dir);
        println!("  {n}  {rec:<16} {dir}");
    }

    for (label, z) in [("0.2 (below 1/4)", ratio(1, 5)), ("0.3 (above 1/4)", ratio(3, 10))] {
        let mut probe_table = TnTable::new(TnModel::Rods(&dimers), z.clone())?;
        let outcome = stabilization_probe(&mut probe_table, &site, 1e-8, 64, 1e6)?;
        print!("z = {label}: ");
        match outcome {
            StabilizationOutcome::Stabilized { at, value } => {
                println!("stabilized at N = {at}, value {value:.9}")
            }
            StabilizationOutcome::RatioDiverged { at, ratio } => {
                println!("ratio blow-up at N = {at} (ratio {ratio:.3e})")
            }
            StabilizationOutcome::CeilingReached { ceiling, last_rel } => {
                println!("no stabilization within N <= {ceiling} (last increment {last_rel:.3e})")
            }
        }
        let mut wide = TnTable::new(TnModel::Rods(&dimers), z)?;
        if let StabilizationOutcome::Stabilized { at, value } =
            stabilization_probe(&mut wide, &site, 1e-8, 160, 1e6)?
        {
            let t64 = rational_to_f64(&wide.value(&site, 64)?);
            println!("  (with ceiling 160: stabilizes at N = {at}, value {value:.9}; T_64 = {t64:.9})");
        }
    }
    Ok(())
}
