use num::{One, Zero};

use super::config::PointConfig;
use super::graphs::{enumerate_graphs, GraphClass, GraphOnN, MAX_BRUTE_VERTICES};
use super::ursell::{psi, PsiMethod};
use crate::{Error, Rational, Result};

/// A forest on `[total]` whose first `roots` vertices are the tree
/// roots: every non-root has a parent, and following parents reaches a
/// root. A forest with `k` non-roots has exactly `k` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    total: usize,
    roots: usize,
    parent: Vec<Option<usize>>,
}

impl RootedForest {
    pub fn new(total: usize, roots: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        if roots == 0 || roots > total || parent.len() != total {
            return Err(Error::contract("malformed rooted forest"));
        }
        for v in 0..roots {
            if parent[v].is_some() {
                return Err(Error::contract("roots must not have parents"));
            }
        }
        let f = RootedForest { total, roots, parent };
        for v in roots..total {
            if f.depth_checked(v).is_none() {
                return Err(Error::contract(
                    "parent chains must reach a root without cycles",
                ));
            }
        }
        Ok(f)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn roots(&self) -> usize {
        self.roots
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    fn depth_checked(&self, v: usize) -> Option<usize> {
        let mut cur = v;
        let mut steps = 0;
        while let Some(p) = self.parent[cur] {
            cur = p;
            steps += 1;
            if steps > self.total {
                return None;
            }
        }
        (cur < self.roots).then_some(steps)
    }

    /// Depth of a vertex within its tree (roots have depth 0).
    pub fn depth(&self, v: usize) -> usize {
        self.depth_checked(v).expect("validated at construction")
    }

    /// The `k` forest edges, derived from the parent map.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (self.roots..self.total)
            .map(|v| {
                let p = self.parent[v].expect("non-roots have parents");
                if p < v {
                    (p, v)
                } else {
                    (v, p)
                }
            })
            .collect()
    }

    pub fn as_graph(&self) -> GraphOnN {
        GraphOnN::from_edge_list(self.total, self.roots, &self.edges())
    }
}

/// Enumerates every forest in the class: `roots` trees on `total`
/// labelled vertices, rooted at the first `roots` vertices.
pub fn enumerate_forests(roots: usize, total: usize) -> Result<Vec<RootedForest>> {
    if roots == 0 || roots > total {
        return Err(Error::contract("root count out of range"));
    }
    if total > MAX_BRUTE_VERTICES {
        return Err(Error::capacity(format!(
            "forest enumeration limited to {MAX_BRUTE_VERTICES} vertices, got {total}"
        )));
    }
    let mut out = Vec::new();
    let mut parent: Vec<Option<usize>> = vec![None; total];
    fn rec(v: usize, total: usize, roots: usize, parent: &mut Vec<Option<usize>>, out: &mut Vec<RootedForest>) {
        if v == total {
            if let Ok(f) = RootedForest::new(total, roots, parent.clone()) {
                out.push(f);
            }
            return;
        }
        for p in 0..total {
            if p == v {
                continue;
            }
            parent[v] = Some(p);
            rec(v + 1, total, roots, parent, out);
        }
        parent[v] = None;
    }
    rec(roots, total, roots, &mut parent, &mut out);
    Ok(out)
}

/// Penrose image of a multi-rooted graph: attach a ghost vertex to all
/// roots, take the Penrose spanning tree of the ghost-rooted graph
/// (minimal-index parent on the previous breadth layer), and drop the
/// ghost again. Deterministic, and `E(pi(G))` is a subset of `E(G)`.
pub fn penrose_forest(g: &GraphOnN) -> Result<RootedForest> {
    if !g.is_root_connected() {
        return Err(Error::contract(
            "penrose scheme is defined on root-connected graphs only",
        ));
    }
    let total = g.vertices();
    let roots = g.roots();
    let levels = ghost_levels(g);
    let adj = g.adjacency();
    let mut parent: Vec<Option<usize>> = vec![None; total];
    for v in roots..total {
        let lv = levels[v];
        // Minimal-index neighbour one layer closer to the ghost.
        let m = (0..total)
            .filter(|&u| adj[v] & (1 << u) != 0 && levels[u] + 1 == lv)
            .min()
            .expect("root-connected graphs have a previous-layer neighbour");
        parent[v] = Some(m);
    }
    RootedForest::new(total, roots, parent)
}

/// Breadth layers of the ghost-rooted graph: roots sit at level 1 and
/// every other vertex at 1 + its distance to the nearest root.
fn ghost_levels(g: &GraphOnN) -> Vec<usize> {
    let total = g.vertices();
    let roots = g.roots();
    let adj = g.adjacency();
    let mut level = vec![usize::MAX; total];
    let mut frontier: Vec<usize> = (0..roots).collect();
    for &r in &frontier {
        level[r] = 1;
    }
    let mut d = 1;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for u in 0..total {
                if adj[v] & (1 << u) != 0 && level[u] == usize::MAX {
                    level[u] = d;
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    level
}

/// Maximal graph of the Penrose interval `[F, R(F)]`: the forest plus
/// every same-layer edge and every descending edge whose upper endpoint
/// has a larger index than the parent of the lower endpoint.
pub fn penrose_closure(f: &RootedForest) -> GraphOnN {
    let total = f.total();
    let mut level = vec![0usize; total];
    for v in 0..total {
        level[v] = if v < f.roots() { 1 } else { 1 + f.depth(v) };
    }
    let mut edges = f.edges();
    for u in 0..total {
        for v in (u + 1)..total {
            if edges.contains(&(u, v)) {
                continue;
            }
            let (lo, hi) = if level[u] <= level[v] { (u, v) } else { (v, u) };
            if level[lo] == level[hi] {
                edges.push((u, v));
            } else if level[lo] + 1 == level[hi] {
                // `hi` is a non-root (level >= 2) with a forest parent.
                let p = f.parent(hi).expect("deeper vertex has a parent");
                if lo > p {
                    edges.push((u, v));
                }
            }
        }
    }
    GraphOnN::from_edge_list(total, f.roots(), &edges)
}

/// Both sides of the forest-graph equality: the forest sum
/// `sum_F prod_{E(F)} f * prod_{E(R(F)) \ E(F)} (1+f)` and the direct
/// multi-rooted graph sum, plus their comparison.
#[derive(Debug, Clone)]
pub struct ForestGraphComparison {
    pub equal: bool,
    pub forest_side: Rational,
    pub graph_side: Rational,
}

const MAX_FOREST_IDENTITY_VERTICES: usize = 7;

pub fn verify_forest_graph_equality(
    n: usize,
    k: usize,
    cfg: &PointConfig,
) -> Result<ForestGraphComparison> {
    let total = n + k;
    if cfg.size() != total {
        return Err(Error::contract("configuration size must equal n + k"));
    }
    if total > MAX_FOREST_IDENTITY_VERTICES {
        return Err(Error::capacity(format!(
            "forest-graph identity check limited to {MAX_FOREST_IDENTITY_VERTICES} vertices, got {total}"
        )));
    }
    let mut forest_side = Rational::zero();
    for f in enumerate_forests(n, total)? {
        let mut term = Rational::one();
        for (a, b) in f.edges() {
            term *= cfg.f(a, b);
        }
        if term.is_zero() {
            continue;
        }
        let closure = penrose_closure(&f);
        let fg = f.as_graph();
        for (a, b) in closure.edge_list() {
            if !fg.contains_edge(a, b) {
                term *= cfg.one_plus_f(a, b);
            }
        }
        forest_side += term;
    }
    let graph_side = psi(n, cfg, PsiMethod::Brute)?;
    Ok(ForestGraphComparison {
        equal: forest_side == graph_side,
        forest_side,
        graph_side,
    })
}

/// Checks the partition-scheme property on all of `D_{n,n+k}`: every
/// graph sits inside its own Penrose interval, and the interval sizes
/// add up to the class size (hence the intervals partition the class).
pub fn verify_partition_scheme(n: usize, k: usize) -> Result<bool> {
    let total = n + k;
    let mut class_size = 0u64;
    let mut forests_hit = std::collections::HashSet::new();
    for g in enumerate_graphs(total, GraphClass::RootConnected { roots: n })? {
        class_size += 1;
        let f = penrose_forest(&g)?;
        let fg = f.as_graph();
        let r = penrose_closure(&f);
        // E(F) subset of E(G) subset of E(R(F)).
        if fg.edge_mask() & !g.edge_mask() != 0 || g.edge_mask() & !r.edge_mask() != 0 {
            return Ok(false);
        }
        forests_hit.insert(fg.edge_mask());
    }
    let mut interval_total = 0u64;
    for f in enumerate_forests(n, total)? {
        let extra = penrose_closure(&f).edge_count() - f.edges().len();
        interval_total += 1u64 << extra;
    }
    let _ = forests_hit;
    Ok(interval_total == class_size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn forest_counts_follow_cayley() {
        // n * (n+k)^(k-1) forests with n roots on n+k vertices.
        assert_eq!(enumerate_forests(1, 3).unwrap().len(), 3);
        assert_eq!(enumerate_forests(2, 4).unwrap().len(), 8);
        assert_eq!(enumerate_forests(1, 4).unwrap().len(), 16);
        assert_eq!(enumerate_forests(3, 3).unwrap().len(), 1);
    }

    #[test]
    fn forests_have_k_edges() {
        for f in enumerate_forests(2, 5).unwrap() {
            assert_eq!(f.edges().len(), 3);
        }
    }

    #[test]
    fn penrose_fixes_forests() {
        for f in enumerate_forests(2, 4).unwrap() {
            let g = f.as_graph();
            assert_eq!(penrose_forest(&g).unwrap(), f);
        }
    }

    #[test]
    fn penrose_triangle_becomes_star() {
        let triangle = GraphOnN::from_edge_list(3, 1, &[(0, 1), (1, 2), (0, 2)]);
        let f = penrose_forest(&triangle).unwrap();
        assert_eq!(f.parent(1), Some(0));
        assert_eq!(f.parent(2), Some(0));
    }

    #[test]
    fn penrose_rejects_disconnected() {
        let g = GraphOnN::from_edge_list(3, 1, &[(0, 1)]);
        assert!(penrose_forest(&g).is_err());
    }

    #[test]
    fn partition_scheme_partitions_the_class() {
        // Everything up to 6 vertices.
        for (n, k) in [
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 2),
            (3, 3),
            (4, 2),
        ] {
            assert!(verify_partition_scheme(n, k).unwrap(), "failed at ({n},{k})");
        }
    }

    #[test]
    fn forest_identity_small_cases() {
        // n=1, k=1, hard-core overlap: both sides are -1.
        let cfg = PointConfig::hard_core(2, |_, _| true);
        let cmp = verify_forest_graph_equality(1, 1, &cfg).unwrap();
        assert!(cmp.equal);
        assert_eq!(cmp.graph_side, ratio(-1, 1));
        // n=1, k=2, all f = -1: both sides equal phi_3 = 2.
        let cfg3 = PointConfig::hard_core(3, |_, _| true);
        let cmp3 = verify_forest_graph_equality(1, 2, &cfg3).unwrap();
        assert!(cmp3.equal);
        assert_eq!(cmp3.graph_side, ratio(2, 1));
    }
}
