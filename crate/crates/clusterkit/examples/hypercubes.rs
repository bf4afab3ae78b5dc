//! Side-k hypercubes on Z^d: the closed-form optimum of the lattice
//! bound against the numeric optimizer, and the d -> infinity trend.

use clusterkit::criteria::{hypercube_closed_form, lgoof_bound, OptimizeOptions};
use clusterkit::models::LatticeShapeModel;
use clusterkit::ratio;

fn main() -> clusterkit::Result<()> {
    let opts = OptimizeOptions::default();

    println!("closed form vs optimizer:");
    for d in 1..=3 {
        for k in 2..=4 {
            let closed = hypercube_closed_form(d, k)?;
            let model = LatticeShapeModel::hypercube(d, k, ratio(0, 1))?;
            let numeric = lgoof_bound(&model, "cube", opts)?;
            println!(
                "  d={d} k={k}: closed {closed:.12}, optimizer {:.12}, |diff| = {:.2e}",
                numeric.z_max,
                (closed - numeric.z_max).abs()
            );
        }
    }

    println!("\nnormalized bound (2k-1)^d z_max for k = 2, decreasing toward 1/e:");
    for d in [1, 2, 3, 5, 8, 12, 16, 20] {
        let normalized = hypercube_closed_form(d, 2)? * 3f64.powi(d as i32);
        println!("  d={d:<3} {normalized:.9}");
    }
    println!("  1/e = {:.9}", (-1.0f64).exp());
    Ok(())
}
