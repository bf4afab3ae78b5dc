use num::{One, Zero};

use super::config::PointConfig;
use crate::{Error, Rational, Result};

/// Brute-force enumeration cap: graphs on more than this many vertices
/// are refused (2^C(8,2) = 2^28 edge subsets is the largest sum we run).
pub const MAX_BRUTE_VERTICES: usize = 8;

/// Slot of the unordered pair `{i, j}`, `i < j`, among the `C(n,2)`
/// pair slots of an `n`-vertex graph (row-major upper triangle).
pub fn pair_slot(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn pair_of_slot(slot: usize, n: usize) -> (usize, usize) {
    let mut s = slot;
    for i in 0..n {
        let row = n - i - 1;
        if s < row {
            return (i, i + 1 + s);
        }
        s -= row;
    }
    unreachable!("slot out of range")
}

/// A labelled graph on `[n]` with the first `roots` vertices marked as
/// roots. Edges are stored as a bitmask over the `C(n,2)` pair slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphOnN {
    vertices: u8,
    roots: u8,
    edges: u32,
}

impl GraphOnN {
    pub fn new(vertices: usize, roots: usize, edges: u32) -> Self {
        assert!(vertices <= MAX_BRUTE_VERTICES);
        assert!(roots <= vertices);
        GraphOnN {
            vertices: vertices as u8,
            roots: roots as u8,
            edges,
        }
    }

    pub fn from_edge_list(vertices: usize, roots: usize, edges: &[(usize, usize)]) -> Self {
        let mut mask = 0u32;
        for &(a, b) in edges {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            mask |= 1 << pair_slot(i, j, vertices);
        }
        GraphOnN::new(vertices, roots, mask)
    }

    pub fn vertices(&self) -> usize {
        self.vertices as usize
    }

    pub fn roots(&self) -> usize {
        self.roots as usize
    }

    pub fn edge_mask(&self) -> u32 {
        self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.edges & (1 << pair_slot(i, j, self.vertices())) != 0
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let n = self.vertices();
        let mut out = Vec::with_capacity(self.edge_count());
        let mut m = self.edges;
        while m != 0 {
            let slot = m.trailing_zeros() as usize;
            out.push(pair_of_slot(slot, n));
            m &= m - 1;
        }
        out
    }

    /// Per-vertex adjacency bitsets.
    pub fn adjacency(&self) -> Vec<u16> {
        let n = self.vertices();
        let mut adj = vec![0u16; n];
        for (a, b) in self.edge_list() {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    /// Connectivity of the whole vertex set (a single vertex counts as
    /// connected).
    pub fn is_connected(&self) -> bool {
        let n = self.vertices();
        reach(&self.adjacency(), 1u16) == (1u16 << n) - 1
    }

    /// Membership in the multi-rooted class: every non-root vertex lies
    /// in a connected component containing at least one root.
    pub fn is_root_connected(&self) -> bool {
        let n = self.vertices();
        let roots_mask = (1u16 << self.roots()) - 1;
        reach(&self.adjacency(), roots_mask) == (1u16 << n) - 1
    }
}

/// Closure of `seed` under the adjacency relation.
fn reach(adj: &[u16], seed: u16) -> u16 {
    let mut reached = seed;
    let mut frontier = seed;
    while frontier != 0 {
        let mut next = 0u16;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !reached;
        reached |= next;
    }
    reached
}

/// Graph classes the enumerator understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    /// All graphs on the vertex set.
    All,
    /// Connected graphs.
    Connected,
    /// Multi-rooted graphs with the given number of roots.
    RootConnected { roots: usize },
}

/// Streams every graph of the class on `vertices` labelled vertices
/// exactly once.
pub fn enumerate_graphs(
    vertices: usize,
    class: GraphClass,
) -> Result<impl Iterator<Item = GraphOnN>> {
    if vertices == 0 {
        return Err(Error::contract("vertex count must be at least 1"));
    }
    if vertices > MAX_BRUTE_VERTICES {
        return Err(Error::capacity(format!(
            "graph enumeration limited to {MAX_BRUTE_VERTICES} vertices, got {vertices}"
        )));
    }
    let roots = match class {
        GraphClass::RootConnected { roots } => {
            if roots == 0 || roots > vertices {
                return Err(Error::contract(format!(
                    "root count {roots} out of range for {vertices} vertices"
                )));
            }
            roots
        }
        _ => vertices,
    };
    let slots = vertices * (vertices - 1) / 2;
    let total = 1u64 << slots;
    Ok((0..total).filter_map(move |mask| {
        let g = GraphOnN::new(vertices, roots, mask as u32);
        let keep = match class {
            GraphClass::All => true,
            GraphClass::Connected => g.is_connected(),
            GraphClass::RootConnected { .. } => g.is_root_connected(),
        };
        keep.then_some(g)
    }))
}

/// Mayer weight of a graph: the product of `f(x_i, x_j)` over its
/// edges. The empty edge set yields 1.
pub fn graph_weight(g: &GraphOnN, cfg: &PointConfig) -> Result<Rational> {
    if g.vertices() != cfg.size() {
        return Err(Error::contract(format!(
            "graph has {} vertices but configuration has {} points",
            g.vertices(),
            cfg.size()
        )));
    }
    let mut w = Rational::one();
    for (a, b) in g.edge_list() {
        w *= cfg.f(a, b);
    }
    Ok(w)
}

/// Edge predicate for the support-restricted brute-force sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumClass {
    Connected,
    RootConnected { roots: usize },
    /// Root-connected with no edges between two roots.
    RootConnectedReduced { roots: usize },
}

/// Sum of Mayer weights over all graphs of the class on `cfg.size()`
/// vertices. Only subsets of the non-zero ("support") edges are
/// walked: graphs with a zero-weight edge contribute nothing. If every
/// support value is -1 the sum is a signed count and runs in integer
/// arithmetic; otherwise a Gray-code walk keeps the running product
/// with one multiplication or exact division per step.
pub fn sum_class_weights(cfg: &PointConfig, class: SumClass) -> Result<Rational> {
    let n = cfg.size();
    if n > MAX_BRUTE_VERTICES {
        return Err(Error::capacity(format!(
            "brute-force graph sums limited to {MAX_BRUTE_VERTICES} vertices, got {n}"
        )));
    }
    let roots = match class {
        SumClass::Connected => n,
        SumClass::RootConnected { roots } | SumClass::RootConnectedReduced { roots } => roots,
    };
    if roots == 0 || roots > n {
        return Err(Error::contract(format!(
            "root count {roots} out of range for {n} vertices"
        )));
    }
    let exclude_root_pairs = matches!(class, SumClass::RootConnectedReduced { .. });

    let mut support: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if exclude_root_pairs && j < roots {
                continue;
            }
            if !cfg.f(i, j).is_zero() {
                support.push((i, j));
            }
        }
    }
    let m = support.len();
    let seed_mask = match class {
        SumClass::Connected => 1u16,
        _ => (1u16 << roots) - 1,
    };
    let full = (1u16 << n) - 1;
    let mut adj = vec![0u16; n];

    // Empty graph first (mask 0): adjacency all zero.
    let qualifies = |adj: &[u16]| reach(adj, seed_mask) == full;

    let minus_one = -Rational::one();
    let pure_sign = support.iter().all(|&(i, j)| *cfg.f(i, j) == minus_one);

    if pure_sign {
        let mut acc: i64 = 0;
        let mut parity_sign = 1i64;
        if qualifies(&adj) {
            acc += 1;
        }
        // Gray-code walk: one edge toggles per step.
        for g in 1u64..(1u64 << m) {
            let bit = g.trailing_zeros() as usize;
            let (a, b) = support[bit];
            adj[a] ^= 1 << b;
            adj[b] ^= 1 << a;
            parity_sign = -parity_sign;
            if qualifies(&adj) {
                acc += parity_sign;
            }
        }
        Ok(Rational::from_integer(acc.into()))
    } else {
        let mut acc = Rational::zero();
        let mut weight = Rational::one();
        if qualifies(&adj) {
            acc += &weight;
        }
        for g in 1u64..(1u64 << m) {
            let bit = g.trailing_zeros() as usize;
            let (a, b) = support[bit];
            let present_now = adj[a] & (1 << b) == 0;
            adj[a] ^= 1 << b;
            adj[b] ^= 1 << a;
            if present_now {
                weight *= cfg.f(a, b);
            } else {
                weight /= cfg.f(a, b);
            }
            if qualifies(&adj) {
                acc += &weight;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn pair_slots_roundtrip() {
        let n = 6;
        let mut seen = vec![false; n * (n - 1) / 2];
        for i in 0..n {
            for j in (i + 1)..n {
                let s = pair_slot(i, j, n);
                assert!(!seen[s]);
                seen[s] = true;
                assert_eq!(pair_of_slot(s, n), (i, j));
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn connected_graph_counts() {
        // Only connected graph on 2 vertices: the single edge.
        let g2: Vec<_> = enumerate_graphs(2, GraphClass::Connected).unwrap().collect();
        assert_eq!(g2.len(), 1);
        // 4 connected graphs on 3 vertices: 3 two-edge trees + triangle.
        let g3: Vec<_> = enumerate_graphs(3, GraphClass::Connected).unwrap().collect();
        assert_eq!(g3.len(), 4);
        // Exhaustive: all 8 graphs on 3 vertices exist.
        let all3: Vec<_> = enumerate_graphs(3, GraphClass::All).unwrap().collect();
        assert_eq!(all3.len(), 8);
        // Known counts of connected labelled graphs on 4 and 5 vertices.
        assert_eq!(enumerate_graphs(4, GraphClass::Connected).unwrap().count(), 38);
        assert_eq!(enumerate_graphs(5, GraphClass::Connected).unwrap().count(), 728);
    }

    // Reference implementation: component labels via repeated sweeps.
    fn root_connected_reference(g: &GraphOnN) -> bool {
        let n = g.vertices();
        let mut comp: Vec<usize> = (0..n).collect();
        loop {
            let mut changed = false;
            for (a, b) in g.edge_list() {
                let m = comp[a].min(comp[b]);
                if comp[a] != m || comp[b] != m {
                    comp[a] = m;
                    comp[b] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (g.roots()..n).all(|v| {
            let c = comp[v];
            (0..g.roots()).any(|r| comp[r] == c)
        })
    }

    #[test]
    fn root_connectivity_matches_reference() {
        for mask in 0u32..(1 << 10) {
            let g = GraphOnN::new(5, 2, mask);
            assert_eq!(
                g.is_root_connected(),
                root_connected_reference(&g),
                "mask {mask:#b}"
            );
        }
    }

    #[test]
    fn root_connected_counts() {
        // n=1, k=1: vertex 2 must connect to root 1 -> only the edge {1,2}.
        let d: Vec<_> = enumerate_graphs(2, GraphClass::RootConnected { roots: 1 })
            .unwrap()
            .collect();
        assert_eq!(d.len(), 1);
        assert!(d[0].contains_edge(0, 1));
        // k=0: the condition is vacuous, all graphs on the roots qualify.
        let d0: Vec<_> = enumerate_graphs(3, GraphClass::RootConnected { roots: 3 })
            .unwrap()
            .collect();
        assert_eq!(d0.len(), 8);
    }

    #[test]
    fn weights() {
        let cfg = PointConfig::hard_core(3, |_, _| true);
        let empty = GraphOnN::from_edge_list(3, 3, &[]);
        assert_eq!(graph_weight(&empty, &cfg).unwrap(), ratio(1, 1));
        let edge = GraphOnN::from_edge_list(2, 2, &[(0, 1)]);
        let cfg2 = PointConfig::hard_core(2, |_, _| true);
        assert_eq!(graph_weight(&edge, &cfg2).unwrap(), ratio(-1, 1));
        let triangle = GraphOnN::from_edge_list(3, 3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(graph_weight(&triangle, &cfg).unwrap(), ratio(-1, 1));
    }

    #[test]
    fn dimension_mismatch_is_contract_error() {
        let cfg = PointConfig::hard_core(3, |_, _| true);
        let edge = GraphOnN::from_edge_list(2, 2, &[(0, 1)]);
        assert!(graph_weight(&edge, &cfg).is_err());
    }

    #[test]
    fn capacity_guard() {
        assert!(enumerate_graphs(9, GraphClass::All).is_err());
    }

    #[test]
    fn sum_matches_enumeration() {
        // Random-ish rational config on 5 vertices, mixed zero support.
        let cfg = PointConfig::from_fn(5, |i, j| {
            if (i + j) % 3 == 0 {
                ratio(0, 1)
            } else {
                ratio(-(((i + 2 * j) % 4) as i64), 4)
            }
        });
        for (class, sum_class) in [
            (GraphClass::Connected, SumClass::Connected),
            (
                GraphClass::RootConnected { roots: 2 },
                SumClass::RootConnected { roots: 2 },
            ),
        ] {
            let slow: Rational = enumerate_graphs(5, class)
                .unwrap()
                .map(|g| graph_weight(&g, &cfg).unwrap())
                .sum();
            let fast = sum_class_weights(&cfg, sum_class).unwrap();
            assert_eq!(slow, fast);
        }
    }
}
