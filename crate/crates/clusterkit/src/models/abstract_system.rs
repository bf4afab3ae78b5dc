use num::Signed;

use crate::graphkit::PointConfig;
use crate::{Error, Rational, Result};

/// Default cap on the number of compatible subsets a neighborhood
/// enumeration may produce.
pub const DEFAULT_SUBSET_CAP: usize = 1_000_000;

/// A finite abstract polymer system: indexed polymers with non-negative
/// activities and a symmetric, reflexive incompatibility relation.
#[derive(Debug, Clone)]
pub struct AbstractPolymerSystem {
    ids: Vec<String>,
    activity: Vec<Rational>,
    incompatible: Vec<Vec<bool>>,
}

impl AbstractPolymerSystem {
    /// Builds a system from ids, activities and the incompatible pairs.
    /// The relation is symmetrized and every polymer is made
    /// incompatible with itself (reflexivity is part of the setup).
    pub fn new(
        ids: Vec<String>,
        activity: Vec<Rational>,
        incompatible_pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::contract("polymer system must be non-empty"));
        }
        if activity.len() != n {
            return Err(Error::contract("one activity per polymer required"));
        }
        if activity.iter().any(|z| z.is_negative()) {
            return Err(Error::contract("activities must be non-negative"));
        }
        {
            let mut sorted = ids.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::contract("polymer ids must be unique"));
            }
        }
        let mut incompatible = vec![vec![false; n]; n];
        for i in 0..n {
            incompatible[i][i] = true;
        }
        for &(a, b) in incompatible_pairs {
            if a >= n || b >= n {
                return Err(Error::contract(format!(
                    "incompatible pair ({a},{b}) out of range"
                )));
            }
            incompatible[a][b] = true;
            incompatible[b][a] = true;
        }
        Ok(AbstractPolymerSystem {
            ids,
            activity,
            incompatible,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn activity(&self, x: usize) -> &Rational {
        &self.activity[x]
    }

    pub fn activity_f64(&self, x: usize) -> f64 {
        rational_to_f64(&self.activity[x])
    }

    pub fn incompatible(&self, x: usize, y: usize) -> bool {
        self.incompatible[x][y]
    }

    /// `Gamma(x)`: all polymers incompatible with `x`, including `x`.
    pub fn gamma(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.incompatible[x][y]).collect()
    }

    /// `|Gamma(Y)|` within the finite system.
    pub fn gamma_closure_size(&self, members: &[usize]) -> usize {
        (0..self.len())
            .filter(|&w| members.iter().any(|&y| self.incompatible[y][w]))
            .count()
    }

    /// Hard-core Mayer configuration of an ordered polymer tuple:
    /// `f = -1` on incompatible pairs (repeats are self-incompatible).
    pub fn point_config(&self, tuple: &[usize]) -> PointConfig {
        PointConfig::hard_core(tuple.len(), |a, b| {
            self.incompatible[tuple[a]][tuple[b]]
        })
    }

    /// Enumerates `Gamma(x)` together with every pairwise-compatible
    /// subset of it and the subset's `Gamma`-closure size.
    pub fn neighborhood(&self, x: usize, subset_cap: usize) -> Result<NeighborhoodSummary> {
        if x >= self.len() {
            return Err(Error::contract(format!("unknown polymer index {x}")));
        }
        let gamma = self.gamma(x);
        let mut subsets = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        self.extend_subsets(&gamma, 0, &mut stack, &mut subsets, subset_cap)?;
        Ok(NeighborhoodSummary {
            center: x,
            gamma,
            compatible_subsets: subsets,
        })
    }

    fn extend_subsets(
        &self,
        gamma: &[usize],
        from: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<CompatibleSubset>,
        cap: usize,
    ) -> Result<()> {
        if out.len() >= cap {
            return Err(Error::capacity(format!(
                "neighborhood subset cap {cap} exceeded"
            )));
        }
        out.push(CompatibleSubset {
            members: stack.clone(),
            gamma_closure_size: self.gamma_closure_size(stack),
        });
        for idx in from..gamma.len() {
            let y = gamma[idx];
            if stack.iter().all(|&m| !self.incompatible[m][y]) {
                stack.push(y);
                self.extend_subsets(gamma, idx + 1, stack, out, cap)?;
                stack.pop();
            }
        }
        Ok(())
    }
}

/// A pairwise-compatible subset of some `Gamma(x)` with its closure size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleSubset {
    pub members: Vec<usize>,
    pub gamma_closure_size: usize,
}

impl CompatibleSubset {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// `Gamma(x)` of one polymer and the compatible subsets the improved
/// criterion sums over.
#[derive(Debug, Clone)]
pub struct NeighborhoodSummary {
    pub center: usize,
    pub gamma: Vec<usize>,
    pub compatible_subsets: Vec<CompatibleSubset>,
}

impl NeighborhoodSummary {
    pub fn gamma_size(&self) -> usize {
        self.gamma.len()
    }

    /// Independence-polynomial coefficients: entry `s` counts the
    /// compatible subsets of size `s`.
    pub fn subset_counts_by_size(&self) -> Vec<usize> {
        let max = self
            .compatible_subsets
            .iter()
            .map(|s| s.size())
            .max()
            .unwrap_or(0);
        let mut counts = vec![0usize; max + 1];
        for s in &self.compatible_subsets {
            counts[s.size()] += 1;
        }
        counts
    }

    /// Multiset of (subset size, closure size) pairs with counts,
    /// sorted for deterministic comparison.
    pub fn closure_multiset(&self) -> Vec<(usize, usize, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for s in &self.compatible_subsets {
            *map.entry((s.size(), s.gamma_closure_size)).or_insert(0usize) += 1;
        }
        map.into_iter().map(|((a, b), c)| (a, b, c)).collect()
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
