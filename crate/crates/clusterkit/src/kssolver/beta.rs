use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Cap on the vertex count of the subset enumeration behind `beta`.
pub const MAX_Q_VERTICES: usize = 16;

/// The finite graph the beta coefficients live on: vertices with
/// non-negative weights `mu`, adjacency meaning incompatibility, and
/// compatibility defined as non-adjacency of distinct vertices.
#[derive(Debug, Clone)]
pub struct QGraph {
    mu: Vec<f64>,
    adjacency: Vec<Vec<bool>>,
}

impl QGraph {
    pub fn new(mu: Vec<f64>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = mu.len();
        if n == 0 {
            return Err(Error::contract("Q must be non-empty"));
        }
        if n > MAX_Q_VERTICES {
            return Err(Error::capacity(format!(
                "beta coefficients limited to {MAX_Q_VERTICES} vertices, got {n}"
            )));
        }
        if mu.iter().any(|&m| m.is_nan() || m < 0.0) {
            return Err(Error::contract("mu must be non-negative"));
        }
        let mut adjacency = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::contract(format!("bad edge ({a},{b})")));
            }
            adjacency[a][b] = true;
            adjacency[b][a] = true;
        }
        Ok(QGraph { mu, adjacency })
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    /// Closed neighborhood union of a vertex set, as a bitmask.
    fn gamma_mask(&self, set_mask: u32) -> u32 {
        let mut out = set_mask;
        for v in 0..self.len() {
            if set_mask & (1 << v) != 0 {
                for w in 0..self.len() {
                    if self.adjacency[v][w] {
                        out |= 1 << w;
                    }
                }
            }
        }
        out
    }

    fn independent(&self, set_mask: u32) -> bool {
        for v in 0..self.len() {
            if set_mask & (1 << v) == 0 {
                continue;
            }
            for w in (v + 1)..self.len() {
                if set_mask & (1 << w) != 0 && self.adjacency[v][w] {
                    return false;
                }
            }
        }
        true
    }
}

/// The coefficient
/// `beta_U = prod_{q in Q\U} e^{-mu(q)}
///  + sum_{C independent, C n U = {}} prod_{c in C} mu(c)
///    prod_{w in (Q\U)\Gamma(C)} e^{-mu(w)}`,
/// where `C` ranges over the non-empty compatible subsets of `Q`.
/// Always at least 1; in particular `beta_Q = 1`.
pub fn beta_coefficient(q: &QGraph, u: &[usize]) -> Result<f64> {
    let n = q.len();
    let mut u_mask = 0u32;
    for &v in u {
        if v >= n {
            return Err(Error::contract(format!("U contains unknown vertex {v}")));
        }
        u_mask |= 1 << v;
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let outside_u = full & !u_mask;

    let weight_outside = |mask: u32| -> f64 {
        let mut s = 0.0;
        for v in 0..n {
            if mask & (1 << v) != 0 {
                s += q.mu[v];
            }
        }
        (-s).exp()
    };

    let mut beta = weight_outside(outside_u);
    for c_mask in 1u32..=full {
        if c_mask & u_mask != 0 || !q.independent(c_mask) {
            continue;
        }
        let mut prod = 1.0;
        for v in 0..n {
            if c_mask & (1 << v) != 0 {
                prod *= q.mu[v];
            }
        }
        let survivors = outside_u & !q.gamma_mask(c_mask);
        beta += prod * weight_outside(survivors);
    }
    Ok(beta)
}

/// Statistics of a randomized sweep over `(Q, mu, U)` instances.
#[derive(Debug, Clone, Copy)]
pub struct BetaSweep {
    pub trials: u64,
    pub min_beta: f64,
}

/// Samples random graphs `Q` (each pair adjacent with probability 1/2),
/// random `mu` in `[0, mu_max]` and a random subset `U`, and reports the
/// minimum observed coefficient.
pub fn beta_min_random(trials: u64, seed: u64, q_max: usize, mu_max: f64) -> Result<BetaSweep> {
    if q_max == 0 || q_max > MAX_Q_VERTICES {
        return Err(Error::contract(format!(
            "q_max must be in 1..={MAX_Q_VERTICES}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_beta = f64::INFINITY;
    for _ in 0..trials {
        let n = rng.gen_range(1..=q_max);
        let mu: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=mu_max)).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen_bool(0.5) {
                    edges.push((a, b));
                }
            }
        }
        let q = QGraph::new(mu, &edges)?;
        let u: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let beta = beta_coefficient(&q, &u)?;
        min_beta = min_beta.min(beta);
    }
    Ok(BetaSweep { trials, min_beta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_base_cases() {
        let q = QGraph::new(vec![1.0], &[]).unwrap();
        // U = Q: only the leading empty product survives.
        assert_eq!(beta_coefficient(&q, &[0]).unwrap(), 1.0);
        // U = {}: e^{-mu} + mu.
        let b = beta_coefficient(&q, &[]).unwrap();
        assert!((b - ((-1.0f64).exp() + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn beta_of_full_u_is_one() {
        let q = QGraph::new(vec![0.3, 1.7, 2.2], &[(0, 1)]).unwrap();
        assert_eq!(beta_coefficient(&q, &[0, 1, 2]).unwrap(), 1.0);
    }

    #[test]
    fn random_sweep_stays_above_one() {
        let sweep = beta_min_random(500, 42, 8, 3.0).unwrap();
        assert!(sweep.min_beta >= 1.0 - 1e-12, "min {}", sweep.min_beta);
    }

    #[test]
    fn capacity_guard() {
        assert!(QGraph::new(vec![0.0; 17], &[]).is_err());
    }
}
