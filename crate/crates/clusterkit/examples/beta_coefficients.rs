//! The beta_U coefficients that certify the improved
//! compatible-subset condition: explicit small graphs and a seeded
//! random sweep of the lower bound beta_U >= 1.

use clusterkit::kssolver::{beta_coefficient, beta_min_random, QGraph};

fn main() -> clusterkit::Result<()> {
    // One vertex: beta_{Q} = 1 and beta_{} = e^{-mu} + mu.
    let single = QGraph::new(vec![1.0], &[])?;
    println!("single vertex, mu = 1:");
    println!("  beta_{{q}} = {}", beta_coefficient(&single, &[0])?);
    println!("  beta_{{}}  = {:.9}", beta_coefficient(&single, &[])?);

    // A path on three vertices: list every beta_U.
    let path = QGraph::new(vec![0.5, 1.5, 0.8], &[(0, 1), (1, 2)])?;
    println!("\npath q0 - q1 - q2 with mu = (0.5, 1.5, 0.8):");
    for mask in 0u8..8 {
        let u: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).collect();
        println!("  beta_{u:?} = {:.9}", beta_coefficient(&path, &u)?);
    }

    let sweep = beta_min_random(10_000, 42, 8, 3.0)?;
    println!(
        "\nrandom sweep: {} instances (|Q| <= 8, mu in [0,3]), min beta = {:.12}",
        sweep.trials, sweep.min_beta
    );
    Ok(())
}
