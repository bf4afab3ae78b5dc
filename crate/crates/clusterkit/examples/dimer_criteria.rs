//! Hard dimers on Z: the full ordering chain of convergence criteria,
//! capped by the exact radius of the discrete Tonks gas.

use clusterkit::criteria::{
    evaluate, tonks_radius_fixed_point, CriterionId, ModelRef, OptimizeOptions,
};
use clusterkit::models::DiscreteRodSystem;

fn main() -> clusterkit::Result<()> {
    let dimers = DiscreteRodSystem::single(2)?;
    let model = ModelRef::RodsDiscrete(&dimers);
    let opts = OptimizeOptions::default();

    println!("hard dimers on Z (rods of length 2)");
    let chain = [
        CriterionId::Kp,
        CriterionId::Gk,
        CriterionId::Lgoof,
        CriterionId::Fp,
        CriterionId::New,
        CriterionId::TonksDiscrete,
    ];
    let mut prev: Option<(CriterionId, f64)> = None;
    for c in chain {
        let r = evaluate(&model, c, "dimers", opts)?;
        let marker = match prev {
            Some((_, p)) if r.z_max <= p => "  (!)",
            _ => "",
        };
        println!("  {:<15} z_max = {:.9}{marker}", c.to_string(), r.z_max);
        prev = Some((c, r.z_max));
    }

    println!("\nclosed forms: kp = 1/(3e) = {:.9}", 1.0 / (3.0 * std::f64::consts::E));
    println!("              gk = 1/8, lgoof = 1/(3*sqrt(3)) = {:.9}", 1.0 / (3.0 * 3f64.sqrt()));
    println!("              fp = 1/5, tonks = 1/4 (the exact radius)");

    let fixed_point = tonks_radius_fixed_point(&dimers, 1e-12)?;
    println!("\nfixed-point characterization h(u) <= u gives {fixed_point:.12}");
    Ok(())
}
