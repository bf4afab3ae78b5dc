use std::collections::HashMap;

use num::{One, Signed, Zero};

use super::ursell::{psi, PsiMethod, SelectionRule};
use crate::models::AbstractPolymerSystem;
use crate::{Error, Rational, Result};

/// Cap on the number of tuple evaluations one recursion check may run.
pub const DEFAULT_TERM_CAP: u64 = 1_000_000;

/// Outcome of the partial-sum recursion check.
#[derive(Debug, Clone)]
pub struct KsRecursionOutcome {
    pub holds: bool,
    pub tuples_checked: u64,
    /// First mismatch, if any: (root tuple ids, N, lhs, rhs).
    pub mismatch: Option<(Vec<String>, u32, Rational, Rational)>,
}

/// Partial sums of the sign-flipped expansion:
/// `S_{N,n}(x) = z(x_1)...z(x_n) sum_{k<=N-n} (1/k!) sum_y |psi_{n,n+k}(x,y)|
/// z(y_1)...z(y_k)` for `N >= n`, zero otherwise.
struct PartialSums<'a> {
    system: &'a AbstractPolymerSystem,
    psi_abs_memo: HashMap<(Vec<usize>, Vec<usize>), Rational>,
    terms: u64,
    term_cap: u64,
}

impl<'a> PartialSums<'a> {
    fn new(system: &'a AbstractPolymerSystem, term_cap: u64) -> Self {
        PartialSums {
            system,
            psi_abs_memo: HashMap::new(),
            terms: 0,
            term_cap,
        }
    }

    fn psi_abs(&mut self, roots: &[usize], nonroots: &[usize]) -> Result<Rational> {
        let mut rkey = roots.to_vec();
        rkey.sort_unstable();
        let mut nkey = nonroots.to_vec();
        nkey.sort_unstable();
        if let Some(v) = self.psi_abs_memo.get(&(rkey.clone(), nkey.clone())) {
            return Ok(v.clone());
        }
        let tuple: Vec<usize> = roots.iter().chain(nonroots.iter()).copied().collect();
        let cfg = self.system.point_config(&tuple);
        let value = psi(roots.len(), &cfg, PsiMethod::Brute)?.abs();
        self.psi_abs_memo.insert((rkey, nkey), value.clone());
        Ok(value)
    }

    fn bump(&mut self) -> Result<()> {
        self.terms += 1;
        if self.terms > self.term_cap {
            return Err(Error::capacity(format!(
                "KS recursion check exceeded {} tuple evaluations",
                self.term_cap
            )));
        }
        Ok(())
    }

    /// `S_{N,n}` evaluated on a root tuple.
    fn s(&mut self, n_trunc: u32, roots: &[usize]) -> Result<Rational> {
        let n = roots.len();
        if (n_trunc as usize) < n {
            return Ok(Rational::zero());
        }
        let mut prefactor = Rational::one();
        for &x in roots {
            prefactor *= self.system.activity(x);
        }
        if prefactor.is_zero() {
            return Ok(Rational::zero());
        }
        let k_max = n_trunc as usize - n;
        let mut total = Rational::zero();
        let mut tuple = vec![0usize; k_max];
        for k in 0..=k_max {
            let mut k_sum = Rational::zero();
            self.sum_tuples(roots, &mut tuple, 0, k, &mut k_sum)?;
            let mut k_fact = Rational::one();
            for i in 1..=k {
                k_fact *= Rational::from_integer((i as i64).into());
            }
            total += k_sum / k_fact;
        }
        Ok(prefactor * total)
    }

    fn sum_tuples(
        &mut self,
        roots: &[usize],
        tuple: &mut Vec<usize>,
        depth: usize,
        k: usize,
        acc: &mut Rational,
    ) -> Result<()> {
        if depth == k {
            self.bump()?;
            let ys = &tuple[..k];
            let psi_abs = self.psi_abs(roots, ys)?;
            if !psi_abs.is_zero() {
                let mut term = psi_abs;
                for &y in ys {
                    term *= self.system.activity(y);
                }
                *acc += term;
            }
            return Ok(());
        }
        for y in 0..self.system.len() {
            tuple[depth] = y;
            self.sum_tuples(roots, tuple, depth + 1, k, acc)?;
        }
        Ok(())
    }

    /// Right-hand side `z(x_1) delta_{n,1} + (K S_N)_n(x)` of the
    /// partial-sum recursion, with the sign-flipped operator
    /// specialized to hard-core interactions.
    fn rhs(&mut self, n_trunc: u32, roots: &[usize], rule: SelectionRule) -> Result<Rational> {
        let n = roots.len();
        let mut rhs = if n == 1 {
            self.system.activity(roots[0]).clone()
        } else {
            Rational::zero()
        };
        let s_idx = rule.select(n);
        let xs = roots[s_idx];
        let rest: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != s_idx)
            .map(|(_, &v)| v)
            .collect();
        // prod (1 + f(x_s, x_i)) vanishes on any incompatible pair.
        if rest.iter().any(|&r| self.system.incompatible(xs, r)) {
            return Ok(rhs);
        }
        let mut op = Rational::zero();
        if n >= 2 {
            op += self.s(n_trunc, &rest)?;
        }
        // |f(x_s, y)| restricts the y's to Gamma(x_s).
        let gamma: Vec<usize> = self.system.gamma(xs);
        let k_cap = (n_trunc as usize + 1).saturating_sub(n);
        let mut tuple = vec![0usize; k_cap];
        for k in 1..=k_cap {
            let mut k_sum = Rational::zero();
            self.sum_gamma_tuples(&rest, &gamma, &mut tuple, 0, k, n_trunc, &mut k_sum)?;
            let mut k_fact = Rational::one();
            for i in 1..=k {
                k_fact *= Rational::from_integer((i as i64).into());
            }
            op += k_sum / k_fact;
        }
        rhs += self.system.activity(xs) * op;
        Ok(rhs)
    }

    #[allow(clippy::too_many_arguments)]
    fn sum_gamma_tuples(
        &mut self,
        rest: &[usize],
        gamma: &[usize],
        tuple: &mut Vec<usize>,
        depth: usize,
        k: usize,
        n_trunc: u32,
        acc: &mut Rational,
    ) -> Result<()> {
        if depth == k {
            self.bump()?;
            let mut extended = rest.to_vec();
            extended.extend_from_slice(&tuple[..k]);
            let inner = self.s(n_trunc, &extended)?;
            if !inner.is_zero() {
                *acc += inner;
            }
            return Ok(());
        }
        for &y in gamma {
            tuple[depth] = y;
            self.sum_gamma_tuples(rest, gamma, tuple, depth + 1, k, n_trunc, acc)?;
        }
        Ok(())
    }
}

/// Verifies the partial-sum fixed-point recursion
/// `S_{N+1} = e_z + K S_N` (the hard-core equality branch) exactly in
/// rational arithmetic, for every root tuple of length up to `n_max`
/// drawn from the system and every `N <= n_max_trunc`.
pub fn verify_ks_recursion_partial(
    system: &AbstractPolymerSystem,
    n_max: usize,
    n_max_trunc: u32,
    rule: SelectionRule,
    term_cap: u64,
) -> Result<KsRecursionOutcome> {
    if n_max == 0 {
        return Err(Error::contract("n_max must be at least 1"));
    }
    let mut sums = PartialSums::new(system, term_cap);
    let mut checked = 0u64;
    let ids = system.len();
    for n in 1..=n_max {
        let mut tuple = vec![0usize; n];
        loop {
            for big_n in 1..=n_max_trunc {
                let lhs = sums.s(big_n + 1, &tuple)?;
                let rhs = sums.rhs(big_n, &tuple, rule)?;
                checked += 1;
                if lhs != rhs {
                    return Ok(KsRecursionOutcome {
                        holds: false,
                        tuples_checked: checked,
                        mismatch: Some((
                            tuple.iter().map(|&x| system.id(x).to_string()).collect(),
                            big_n,
                            lhs,
                            rhs,
                        )),
                    });
                }
            }
            // Next tuple in odometer order.
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < ids {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&t| t == 0) {
                break;
            }
        }
    }
    Ok(KsRecursionOutcome {
        holds: true,
        tuples_checked: checked,
        mismatch: None,
    })
}
