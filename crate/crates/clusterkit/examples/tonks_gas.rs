//! Tonks gases in one dimension: discrete rods (where the criterion is
//! the exact convergence radius) and continuous rods.

use clusterkit::criteria::{
    tonks_continuous_bound, tonks_discrete_bound, tonks_radius_fixed_point, OptimizeOptions,
};
use clusterkit::models::{ContinuousRodSystem, DiscreteRodSystem};
use clusterkit::ratio;

fn main() -> clusterkit::Result<()> {
    let opts = OptimizeOptions::default();

    println!("discrete Tonks gas on Z:");
    for len in [1u32, 2, 3, 5] {
        let rods = DiscreteRodSystem::single(len)?;
        let r = tonks_discrete_bound(&rods, "rods", opts)?;
        let closed = if len == 1 {
            1.0
        } else {
            let l = len as f64;
            (l - 1.0).powf(l - 1.0) / l.powf(l)
        };
        println!(
            "  length {len}: z_max = {:.9} (closed form {closed:.9}, attained = {})",
            r.z_max, r.attained
        );
    }

    let mix = DiscreteRodSystem::new(vec![1, 2], vec![ratio(1, 1), ratio(1, 1)])?;
    let bound = tonks_discrete_bound(&mix, "mix", opts)?;
    let fixed = tonks_radius_fixed_point(&mix, 1e-12)?;
    println!(
        "  monomer+dimer mixture: optimizer {:.10}, h(u)<=u fixed point {:.10}",
        bound.z_max, fixed
    );

    println!("\ncontinuous Tonks gas on R:");
    for len in [0.5, 1.0, 2.0] {
        let rods = ContinuousRodSystem::new(vec![len], vec![1.0])?;
        let r = tonks_continuous_bound(&rods, "rods", opts)?;
        println!(
            "  length {len}: z_max = {:.9} (1/(e L) = {:.9}, strict = {})",
            r.z_max,
            1.0 / (std::f64::consts::E * len),
            r.strict
        );
    }
    let mix = ContinuousRodSystem::new(vec![1.0, 2.0], vec![1.0, 1.0])?;
    let r = tonks_continuous_bound(&mix, "mix", opts)?;
    println!("  lengths (1,2), equal weights: z_max = {:.9}", r.z_max);
    Ok(())
}
