use std::collections::HashMap;

use num::{One, Signed, Zero};

use super::config::PointConfig;
use super::graphs::{sum_class_weights, SumClass, MAX_BRUTE_VERTICES};
use crate::{Error, Rational, Result};

/// Vertex-count cap of the subset-convolution Ursell recurrence.
pub const MAX_RECURRENCE_VERTICES: usize = 16;

/// Deterministic choice of which root to peel off in a recursion step.
/// The value of `psi` does not depend on the rule; only the recursion
/// path does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionRule {
    /// Always select the first entry of the ordered root list.
    #[default]
    First,
    /// Always select the last entry.
    Last,
}

impl SelectionRule {
    pub fn select(&self, len: usize) -> usize {
        debug_assert!(len >= 1);
        match self {
            SelectionRule::First => 0,
            SelectionRule::Last => len - 1,
        }
    }
}

/// Evaluation strategy for [`ursell`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UrsellMethod {
    /// Sum over connected graphs (vertex cap 8).
    Brute,
    /// Subset convolution against the all-graphs sums (vertex cap 16).
    Recurrence,
}

/// Evaluation strategy for [`psi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiMethod {
    /// Sum over multi-rooted graphs (vertex cap 8).
    Brute,
    /// Set partitions of the non-roots against Ursell values.
    Partitions,
    /// Kirkwood-Salsburg style peeling of one root at a time.
    Recursion(SelectionRule),
}

/// `n`-th Ursell function of the configuration: the sum of Mayer
/// weights over connected graphs on all points.
pub fn ursell(cfg: &PointConfig, method: UrsellMethod) -> Result<Rational> {
    match method {
        UrsellMethod::Brute => sum_class_weights(cfg, SumClass::Connected),
        UrsellMethod::Recurrence => {
            let n = cfg.size();
            if n > MAX_RECURRENCE_VERTICES {
                return Err(Error::capacity(format!(
                    "ursell recurrence limited to {MAX_RECURRENCE_VERTICES} vertices, got {n}"
                )));
            }
            let table = ursell_table(cfg);
            Ok(table[table.len() - 1].clone())
        }
    }
}

/// Ursell values of every induced sub-configuration, indexed by
/// point-subset bitmask. Entry 0 (empty set) is unused and left zero.
///
/// Uses the component-of-the-anchor recurrence against the all-graphs
/// sums `Z(V) = prod_{i<j in V} (1 + f_ij)`:
/// `phi(V) = Z(V) - sum_{W strictly inside V, W containing the anchor}
/// phi(W) Z(V \ W)`.
pub fn ursell_table(cfg: &PointConfig) -> Vec<Rational> {
    let n = cfg.size();
    let full = 1usize << n;
    let mut z = vec![Rational::one(); full];
    for mask in 1..full {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut val = z[rest].clone();
        let mut r = rest;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            r &= r - 1;
            val *= cfg.one_plus_f(v, u);
        }
        z[mask] = val;
    }
    let mut phi = vec![Rational::zero(); full];
    for mask in 1..full {
        let anchor = mask.trailing_zeros() as usize;
        let anchor_bit = 1usize << anchor;
        if mask == anchor_bit {
            phi[mask] = Rational::one();
            continue;
        }
        let rest = mask & !anchor_bit;
        let mut val = z[mask].clone();
        // Proper submasks W of `mask` containing the anchor.
        let mut sub = rest;
        loop {
            sub = (sub - 1) & rest;
            let w = sub | anchor_bit;
            if w != mask {
                val -= &phi[w] * &z[mask & !w];
            }
            if sub == 0 {
                break;
            }
        }
        phi[mask] = val;
    }
    phi
}

fn check_psi_preconditions(n: usize, cfg: &PointConfig, cap: usize) -> Result<usize> {
    let total = cfg.size();
    if n == 0 || n > total {
        return Err(Error::contract(format!(
            "root count {n} out of range for {total} points"
        )));
    }
    if total > cap {
        return Err(Error::capacity(format!(
            "psi limited to {cap} points for this method, got {total}"
        )));
    }
    Ok(total)
}

/// Multi-rooted coefficient `psi_{n,n+k}`: the sum of Mayer weights
/// over graphs on all points in which every non-root vertex lies in a
/// component containing one of the first `n` points.
pub fn psi(n: usize, cfg: &PointConfig, method: PsiMethod) -> Result<Rational> {
    match method {
        PsiMethod::Brute => {
            check_psi_preconditions(n, cfg, MAX_BRUTE_VERTICES)?;
            sum_class_weights(cfg, SumClass::RootConnected { roots: n })
        }
        PsiMethod::Partitions => {
            check_psi_preconditions(n, cfg, MAX_RECURRENCE_VERTICES)?;
            Ok(psi_partitions(n, cfg))
        }
        PsiMethod::Recursion(rule) => {
            check_psi_preconditions(n, cfg, MAX_RECURRENCE_VERTICES)?;
            let total = cfg.size();
            let roots: Vec<usize> = (0..n).collect();
            let nonroots: Vec<usize> = (n..total).collect();
            let mut memo = HashMap::new();
            Ok(psi_recursion(cfg, &roots, &nonroots, rule, &mut memo))
        }
    }
}

/// Set-partition evaluation: factor out the root-root interactions and
/// sum over partitions of the non-roots into clusters, each weighted by
/// its Ursell value and its root-attachment factor.
fn psi_partitions(n: usize, cfg: &PointConfig) -> Rational {
    let total = cfg.size();
    let k = total - n;
    let mut root_product = Rational::one();
    for i in 0..n {
        for j in (i + 1)..n {
            root_product *= cfg.one_plus_f(i, j);
        }
    }
    if root_product.is_zero() {
        return Rational::zero();
    }
    if k == 0 {
        return root_product;
    }
    let nonroots: Vec<usize> = (n..total).collect();
    let sub = cfg.restrict(&nonroots);
    let phi = ursell_table(&sub);

    // Root-attachment factor per non-root block B (as a bitmask over
    // the k non-roots): prod_{i<=n, j in B} (1+f_ij) - 1.
    let full = 1usize << k;
    let mut attach = vec![Rational::zero(); full];
    for mask in 1..full {
        let mut p = Rational::one();
        let mut m = mask;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            for i in 0..n {
                p *= cfg.one_plus_f(i, n + j);
            }
        }
        attach[mask] = p - Rational::one();
    }

    let mut sum = Rational::zero();
    let mut blocks: Vec<usize> = Vec::new();
    partition_sum(0, full - 1, &mut blocks, &phi, &attach, &mut sum);
    root_product * sum
}

/// Recursive sum over set partitions of `remaining` (bitmask). To list
/// each partition once, every block must contain the lowest remaining
/// element.
fn partition_sum(
    _depth: usize,
    remaining: usize,
    blocks: &mut Vec<usize>,
    phi: &[Rational],
    attach: &[Rational],
    sum: &mut Rational,
) {
    if remaining == 0 {
        let mut term = Rational::one();
        for &b in blocks.iter() {
            term *= &attach[b] * &phi[b];
            if term.is_zero() {
                break;
            }
        }
        *sum += term;
        return;
    }
    let low = remaining.trailing_zeros() as usize;
    let low_bit = 1usize << low;
    let rest = remaining & !low_bit;
    // All subsets of `rest`, each unioned with the low element.
    let mut sub = rest;
    loop {
        let block = sub | low_bit;
        blocks.push(block);
        partition_sum(_depth + 1, remaining & !block, blocks, phi, attach, sum);
        blocks.pop();
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
}

/// One peeling step: the selected root `x_s` factors against the other
/// roots, and each subset `L` of the non-roots adjacent to `x_s` is
/// promoted to the root set.
fn psi_recursion(
    cfg: &PointConfig,
    roots: &[usize],
    nonroots: &[usize],
    rule: SelectionRule,
    memo: &mut HashMap<(u32, u32), Rational>,
) -> Rational {
    if roots.is_empty() {
        // psi_{0,k} = 1 if there is nothing left, else 0.
        return if nonroots.is_empty() {
            Rational::one()
        } else {
            Rational::zero()
        };
    }
    let key = (
        roots.iter().fold(0u32, |m, &v| m | (1 << v)),
        nonroots.iter().fold(0u32, |m, &v| m | (1 << v)),
    );
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }

    let s = rule.select(roots.len());
    let xs = roots[s];
    let rest: Vec<usize> = roots
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != s)
        .map(|(_, &v)| v)
        .collect();

    let mut prefactor = Rational::one();
    for &r in &rest {
        prefactor *= cfg.one_plus_f(xs, r);
    }
    let mut value = Rational::zero();
    if !prefactor.is_zero() {
        let k = nonroots.len();
        for lmask in 0..(1usize << k) {
            let mut fprod = Rational::one();
            let mut new_roots = rest.clone();
            let mut new_nonroots = Vec::with_capacity(k);
            for (idx, &y) in nonroots.iter().enumerate() {
                if lmask & (1 << idx) != 0 {
                    fprod *= cfg.f(xs, y);
                    new_roots.push(y);
                } else {
                    new_nonroots.push(y);
                }
            }
            if fprod.is_zero() {
                continue;
            }
            let inner = psi_recursion(cfg, &new_roots, &new_nonroots, rule, memo);
            value += fprod * inner;
        }
        value *= prefactor;
    }
    memo.insert(key, value.clone());
    value
}

/// `psi` restricted to graphs without root-root edges. Satisfies
/// `psi = prod_{i<j<=n} (1+f_ij) * psi_reduced`, and for hard-core
/// subset polymers equals the Ursell function of the merged domain.
pub fn psi_reduced(n: usize, cfg: &PointConfig) -> Result<Rational> {
    check_psi_preconditions(n, cfg, MAX_BRUTE_VERTICES)?;
    sum_class_weights(cfg, SumClass::RootConnectedReduced { roots: n })
}

/// Sign check for non-negative potentials: `(-1)^k psi_{n,n+k} >= 0`.
/// Rejects configurations with positive Mayer entries, where the
/// property is not claimed.
pub fn alternating_sign_check(n: usize, cfg: &PointConfig) -> Result<bool> {
    if !cfg.is_nonneg_potential() {
        return Err(Error::contract(
            "alternating-sign property requires Mayer entries in [-1, 0]",
        ));
    }
    let total = check_psi_preconditions(n, cfg, MAX_BRUTE_VERTICES)?;
    let k = total - n;
    let value = psi(n, cfg, PsiMethod::Brute)?;
    let signed = if k.is_multiple_of(2) { value } else { -value };
    Ok(!signed.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn all_minus_one(n: usize) -> PointConfig {
        PointConfig::hard_core(n, |_, _| true)
    }

    #[test]
    fn ursell_small_values() {
        assert_eq!(ursell(&all_minus_one(1), UrsellMethod::Brute).unwrap(), ratio(1, 1));
        assert_eq!(ursell(&all_minus_one(2), UrsellMethod::Brute).unwrap(), ratio(-1, 1));
        // 3 trees at (-1)^2 plus the triangle at (-1)^3: 3 - 1 = 2.
        assert_eq!(ursell(&all_minus_one(3), UrsellMethod::Brute).unwrap(), ratio(2, 1));
        for n in 1..=3 {
            assert_eq!(
                ursell(&all_minus_one(n), UrsellMethod::Brute).unwrap(),
                ursell(&all_minus_one(n), UrsellMethod::Recurrence).unwrap()
            );
        }
    }

    #[test]
    fn psi_examples() {
        // psi_{1,1} = 1 (only the empty graph).
        let cfg1 = all_minus_one(1);
        assert_eq!(psi(1, &cfg1, PsiMethod::Brute).unwrap(), ratio(1, 1));
        // psi_{1,2} with f = -1: the one forced edge.
        let cfg2 = all_minus_one(2);
        assert_eq!(psi(1, &cfg2, PsiMethod::Brute).unwrap(), ratio(-1, 1));
        // psi_{2,3} with f12 = 0, f1y = f2y = -1: -1 -1 + 1 = -1.
        let cfg3 = PointConfig::from_fn(3, |i, j| {
            if (i, j) == (0, 1) {
                ratio(0, 1)
            } else {
                ratio(-1, 1)
            }
        });
        assert_eq!(psi(2, &cfg3, PsiMethod::Brute).unwrap(), ratio(-1, 1));
    }

    #[test]
    fn psi_methods_agree() {
        let cfg = PointConfig::from_fn(5, |i, j| ratio(-(((3 * i + j) % 5) as i64), 5));
        let brute = psi(2, &cfg, PsiMethod::Brute).unwrap();
        let parts = psi(2, &cfg, PsiMethod::Partitions).unwrap();
        let rec_first = psi(2, &cfg, PsiMethod::Recursion(SelectionRule::First)).unwrap();
        let rec_last = psi(2, &cfg, PsiMethod::Recursion(SelectionRule::Last)).unwrap();
        assert_eq!(brute, parts);
        assert_eq!(brute, rec_first);
        assert_eq!(brute, rec_last);
    }

    #[test]
    fn psi_reduces_to_ursell_for_one_root() {
        let cfg = PointConfig::from_fn(4, |i, j| ratio(-(((i + j) % 3) as i64), 3));
        assert_eq!(
            psi(1, &cfg, PsiMethod::Brute).unwrap(),
            ursell(&cfg, UrsellMethod::Brute).unwrap()
        );
    }

    #[test]
    fn psi_reduced_factorization() {
        let cfg = all_minus_one(4);
        // Root pair overlaps, so (1+f) = 0 kills psi entirely.
        assert_eq!(psi(2, &cfg, PsiMethod::Brute).unwrap(), ratio(0, 1));
        // psi_reduced of n=2, k=0 on a non-overlapping pair: empty graph only.
        let cfg0 = PointConfig::hard_core(2, |_, _| false);
        assert_eq!(psi_reduced(2, &cfg0).unwrap(), ratio(1, 1));
        // n=2, k=1 with f1y = f2y = -1, roots compatible: -1 -1 + 1 = -1.
        let cfg21 = PointConfig::from_fn(3, |i, j| {
            if (i, j) == (0, 1) {
                ratio(0, 1)
            } else {
                ratio(-1, 1)
            }
        });
        assert_eq!(psi_reduced(2, &cfg21).unwrap(), ratio(-1, 1));
    }

    #[test]
    fn alternating_sign_examples() {
        let cfg3 = all_minus_one(3);
        // psi_{1,3} = phi_3 = 2, k = 2 -> non-negative.
        assert!(alternating_sign_check(1, &cfg3).unwrap());
        let cfg_pos = PointConfig::from_fn(2, |_, _| ratio(1, 2));
        assert!(alternating_sign_check(1, &cfg_pos).is_err());
    }
}
