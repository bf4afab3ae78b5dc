//! Hard spheres in the continuum: the dimension-wise closed form and
//! the multi-type ball criterion.

use clusterkit::criteria::{gk_cont_bound, hardsphere_bound, OptimizeOptions};
use clusterkit::models::{ball_volume, BallSystem};

fn main() -> clusterkit::Result<()> {
    let opts = OptimizeOptions::default();

    println!("single-type hard spheres, radius 1:");
    println!("  d   z_max            |B_2R| z_max   (-> 1/e from above)");
    for d in 1..=10 {
        let r = hardsphere_bound(d, 1.0, "spheres", opts)?;
        let normalized = r.z_max * ball_volume(d, 2.0)?;
        println!("  {d:<3} {:.9}      {normalized:.9}", r.z_max);
    }
    println!("  1/e = {:.9}", (-1.0f64).exp());

    println!("\nmulti-type hard spheres in d = 1 (rods by another name):");
    let single = BallSystem::new(1, vec![1.0], vec![1.0])?;
    let two = BallSystem::new(1, vec![1.0, 2.0], vec![1.0, 1.0])?;
    let r1 = gk_cont_bound(&single, "single", opts)?;
    let r2 = gk_cont_bound(&two, "two-type", opts)?;
    println!("  radius 1 only:        z_max = {:.9} (= 1/(8R))", r1.z_max);
    println!("  radii (1,2), equal w: z_max = {:.9} (strictly smaller)", r2.z_max);
    Ok(())
}
