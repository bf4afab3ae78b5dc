use std::collections::BTreeSet;

use num::ToPrimitive;

use super::tn::TnModel;
use crate::models::{AbstractPolymerSystem, Cell, DEFAULT_SUBSET_CAP};
use crate::{Error, Result};

/// Set functions `a(D)` the domain-wise condition checker understands.
#[derive(Debug, Clone, Copy)]
pub enum SetAnsatz {
    /// `a(D) = alpha |D|` (the Gruber-Kunz choice).
    Cardinality { alpha: f64 },
    /// `a(D) = alpha V(D)` with `V` the active-polymer count.
    VCount { alpha: f64 },
}

impl SetAnsatz {
    fn eval(&self, model: &TnModel, cells: &BTreeSet<Cell>) -> f64 {
        match self {
            SetAnsatz::Cardinality { alpha } => alpha * cells.len() as f64,
            SetAnsatz::VCount { alpha } => alpha * model.v_count(cells) as f64,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BfpAttempt {
    pub x: Cell,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of the finite-domain condition check: either every domain
/// admits a working cell, or the first failing domain is returned with
/// all its attempts.
#[derive(Debug, Clone)]
pub struct BfpOutcome {
    pub holds: bool,
    pub domains_checked: u64,
    pub failure: Option<(Vec<Cell>, Vec<BfpAttempt>)>,
}

/// Checks, for every non-empty `D` in the window with `|D| <= size_cap`,
/// that some `x in D` satisfies
/// `sum_{Y: x in Y, Y n D' = {}} z(Y) e^{a(D' u Y) - a(D')}
///  <= e^{a(D' u {x}) - a(D')} - 1` with `D' = D \ {x}`.
pub fn bfp_condition_check(
    model: &TnModel,
    ansatz: SetAnsatz,
    window: &[(i64, i64)],
    size_cap: usize,
    z: f64,
    domain_cap: u64,
) -> Result<BfpOutcome> {
    if window.len() != model.dimension() {
        return Err(Error::contract("window must have one range per dimension"));
    }
    if z.is_nan() || z < 0.0 {
        return Err(Error::contract("activity must be non-negative"));
    }
    let mut cells: Vec<Cell> = vec![vec![]];
    for &(lo, hi) in window {
        if lo > hi {
            return Err(Error::contract("window ranges must satisfy lo <= hi"));
        }
        let mut next = Vec::new();
        for c in &cells {
            for v in lo..=hi {
                let mut c2 = c.clone();
                c2.push(v);
                next.push(c2);
            }
        }
        cells = next;
    }
    let m = cells.len();
    if m > 24 {
        return Err(Error::capacity(format!(
            "window has {m} cells; the subset enumeration cap is 24"
        )));
    }

    let mut checked = 0u64;
    for mask in 1u64..(1u64 << m) {
        if (mask.count_ones() as usize) > size_cap {
            continue;
        }
        checked += 1;
        if checked > domain_cap {
            return Err(Error::capacity(format!(
                "domain enumeration cap {domain_cap} exceeded"
            )));
        }
        let domain: BTreeSet<Cell> = (0..m)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| cells[i].clone())
            .collect();
        let mut attempts = Vec::new();
        let mut ok = false;
        for x in &domain {
            let mut rest = domain.clone();
            rest.remove(x);
            let a_rest = ansatz.eval(model, &rest);
            let mut lhs = 0.0;
            for (ycells, w) in model.polymers_through(x) {
                if ycells.iter().any(|c| rest.contains(c)) {
                    continue;
                }
                let mut union = rest.clone();
                union.extend(ycells.iter().cloned());
                lhs += z * w.to_f64().unwrap_or(f64::NAN)
                    * (ansatz.eval(model, &union) - a_rest).exp();
            }
            let mut with_x = rest.clone();
            with_x.insert(x.clone());
            let rhs = (ansatz.eval(model, &with_x) - a_rest).exp() - 1.0;
            if lhs.is_nan() || rhs.is_nan() {
                return Err(Error::numeric("condition check produced NaN"));
            }
            attempts.push(BfpAttempt {
                x: x.clone(),
                lhs,
                rhs,
            });
            if lhs <= rhs {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(BfpOutcome {
                holds: false,
                domains_checked: checked,
                failure: Some((domain.into_iter().collect(), attempts)),
            });
        }
    }
    Ok(BfpOutcome {
        holds: true,
        domains_checked: checked,
        failure: None,
    })
}

/// Tuple weight function of a custom ansatz.
pub type TupleWeightFn = Box<dyn Fn(&[usize]) -> f64>;

/// Ansatz families for the tuple-wise fixed-point inequality check.
pub enum KsAnsatz {
    /// `xi_n(x) = 1{x pairwise compatible} prod mu(x_i)`, with either a
    /// constant or a per-polymer `mu`. Reproduces the reduction used by
    /// the Fernandez-Procacci criterion.
    FpProduct { mu: Vec<f64> },
    /// Arbitrary tuple weights; the operator's polymer sum is truncated
    /// at `k_max` entries, so this is only meaningful when the ansatz
    /// kills or dominates longer tuples.
    Custom { xi: TupleWeightFn, k_max: usize },
}

#[derive(Debug, Clone)]
pub struct Ks1Outcome {
    pub holds: bool,
    pub tuples_checked: u64,
    /// First failing tuple with both sides.
    pub failure: Option<(Vec<String>, f64, f64)>,
}

// Relative slack for the floating-point comparison of the two sides.
const KS1_REL_SLACK: f64 = 1e-12;

/// Verifies `z(x_1) delta_{n,1} + (K xi)_n(x) <= xi_n(x)` for every
/// tuple of length at most `n_max`, with the selection rule fixed to
/// the first entry.
pub fn ks_condition1_check(
    system: &AbstractPolymerSystem,
    ansatz: &KsAnsatz,
    n_max: usize,
) -> Result<Ks1Outcome> {
    if n_max == 0 {
        return Err(Error::contract("n_max must be at least 1"));
    }
    if let KsAnsatz::FpProduct { mu } = ansatz {
        if mu.len() != system.len() {
            return Err(Error::contract(format!(
                "mu has {} entries for {} polymers",
                mu.len(),
                system.len()
            )));
        }
        if mu.iter().any(|&m| m.is_nan() || m < 0.0) {
            return Err(Error::contract("mu must be non-negative"));
        }
    }
    let mut checked = 0u64;
    for n in 1..=n_max {
        let mut tuple = vec![0usize; n];
        loop {
            checked += 1;
            let (lhs, rhs) = evaluate_tuple(system, ansatz, &tuple)?;
            if lhs > rhs + KS1_REL_SLACK * rhs.abs() {
                return Ok(Ks1Outcome {
                    holds: false,
                    tuples_checked: checked,
                    failure: Some((
                        tuple.iter().map(|&x| system.id(x).to_string()).collect(),
                        lhs,
                        rhs,
                    )),
                });
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < system.len() {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&t| t == 0) {
                break;
            }
        }
    }
    Ok(Ks1Outcome {
        holds: true,
        tuples_checked: checked,
        failure: None,
    })
}

fn evaluate_tuple(
    system: &AbstractPolymerSystem,
    ansatz: &KsAnsatz,
    tuple: &[usize],
) -> Result<(f64, f64)> {
    let n = tuple.len();
    let x1 = tuple[0];
    let rest = &tuple[1..];
    let z1 = system.activity_f64(x1);
    match ansatz {
        KsAnsatz::FpProduct { mu } => {
            let xi = |t: &[usize]| -> f64 {
                let mut compatible = true;
                for (i, &a) in t.iter().enumerate() {
                    for &b in &t[i + 1..] {
                        compatible &= !system.incompatible(a, b);
                    }
                }
                if compatible {
                    t.iter().map(|&x| mu[x]).product()
                } else {
                    0.0
                }
            };
            let rhs = xi(tuple);
            // lhs collapses to z(x1) * 1{x1 ~ rest} * xi(rest) *
            // sum over compatible Y in Gamma(x1) with Y ~ rest.
            let compatible_with_rest = rest.iter().all(|&r| !system.incompatible(x1, r));
            let lhs = if !compatible_with_rest {
                if n == 1 {
                    z1
                } else {
                    0.0
                }
            } else {
                let base = if n == 1 { 1.0 } else { xi(rest) };
                if base == 0.0 {
                    0.0
                } else {
                    let gamma = system.gamma(x1);
                    let mut subset_sum = 0.0;
                    let mut stack: Vec<usize> = Vec::new();
                    subset_sum_rec(system, &gamma, rest, mu, 0, &mut stack, &mut subset_sum);
                    z1 * base * subset_sum
                }
            };
            Ok((lhs, rhs))
        }
        KsAnsatz::Custom { xi, k_max } => {
            let rhs = xi(tuple);
            let mut lhs = if n == 1 { z1 } else { 0.0 };
            let compatible_with_rest = rest.iter().all(|&r| !system.incompatible(x1, r));
            if compatible_with_rest {
                if n >= 2 {
                    lhs += z1 * xi(rest);
                }
                let gamma = system.gamma(x1);
                let cap = *k_max;
                let too_many = gamma
                    .len()
                    .checked_pow(cap as u32)
                    .is_none_or(|v| v > DEFAULT_SUBSET_CAP);
                if too_many {
                    return Err(Error::capacity(
                        "custom-ansatz tuple enumeration exceeds the cap",
                    ));
                }
                let mut extended: Vec<usize> = rest.to_vec();
                let mut factorial = 1.0f64;
                for k in 1..=cap {
                    factorial *= k as f64;
                    let mut sum = 0.0;
                    let mut ys = vec![0usize; k];
                    loop {
                        extended.truncate(rest.len());
                        extended.extend(ys.iter().map(|&i| gamma[i]));
                        sum += xi(&extended);
                        let mut pos = k;
                        loop {
                            if pos == 0 {
                                break;
                            }
                            pos -= 1;
                            ys[pos] += 1;
                            if ys[pos] < gamma.len() {
                                break;
                            }
                            ys[pos] = 0;
                        }
                        if ys.iter().all(|&y| y == 0) {
                            break;
                        }
                    }
                    lhs += z1 * sum / factorial;
                }
            }
            Ok((lhs, rhs))
        }
    }
}

fn subset_sum_rec(
    system: &AbstractPolymerSystem,
    gamma: &[usize],
    rest: &[usize],
    mu: &[f64],
    from: usize,
    stack: &mut Vec<usize>,
    acc: &mut f64,
) {
    *acc += stack.iter().map(|&y| mu[y]).product::<f64>();
    for idx in from..gamma.len() {
        let y = gamma[idx];
        if rest.iter().any(|&r| system.incompatible(y, r)) {
            continue;
        }
        if stack.iter().any(|&s| system.incompatible(s, y)) {
            continue;
        }
        stack.push(y);
        subset_sum_rec(system, gamma, rest, mu, idx + 1, stack, acc);
        stack.pop();
    }
}

/// The necessary-decay functional `sum_{Y: x in Y} z(Y) e^{V(Y)}` with
/// `V` the active-polymer count; for single-type models this is
/// `|S| z e^{V(S)}`.
pub fn necessary_decay(model: &TnModel, cell: &Cell, z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::contract("activity must be non-negative"));
    }
    let mut total = 0.0;
    for (cells, w) in model.polymers_through(cell) {
        total += z * w.to_f64().unwrap_or(f64::NAN) * (model.v_count(&cells) as f64).exp();
    }
    if total.is_nan() {
        return Err(Error::numeric("necessary-decay sum produced NaN"));
    }
    Ok(total)
}
