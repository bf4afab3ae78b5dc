//! The forest-graph equality: multi-rooted graph sums factor through
//! the Penrose forest intervals, exactly.

use clusterkit::graphkit::{
    enumerate_forests, enumerate_graphs, penrose_closure, penrose_forest,
    verify_forest_graph_equality, GraphClass, GraphOnN, PointConfig,
};
use clusterkit::ratio;

fn main() -> clusterkit::Result<()> {
    // The triangle on one root: its Penrose image is the 2-edge star.
    let triangle = GraphOnN::from_edge_list(3, 1, &[(0, 1), (1, 2), (0, 2)]);
    let forest = penrose_forest(&triangle)?;
    println!("penrose image of the rooted triangle: edges {:?}", forest.edges());
    let closure = penrose_closure(&forest);
    println!("its interval closure has edges {:?}", closure.edge_list());

    // Interval sizes partition the multi-rooted class.
    for (n, k) in [(1usize, 2usize), (2, 2), (2, 3)] {
        let class_size = enumerate_graphs(n + k, GraphClass::RootConnected { roots: n })?.count();
        let interval_total: u64 = enumerate_forests(n, n + k)?
            .iter()
            .map(|f| {
                let extra = penrose_closure(f).edge_count() - f.edges().len();
                1u64 << extra
            })
            .sum();
        println!(
            "n={n} k={k}: |D| = {class_size}, sum of interval sizes = {interval_total}"
        );
    }

    // The weighted identity on a mixed configuration.
    let cfg = PointConfig::from_fn(5, |i, j| ratio(-(((2 * i + j) % 4) as i64), 4));
    let cmp = verify_forest_graph_equality(2, 3, &cfg)?;
    println!(
        "\nforest side = {}, graph side = {}, equal = {}",
        cmp.forest_side, cmp.graph_side, cmp.equal
    );
    Ok(())
}
