use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graphkit::{
    alternating_sign_check, psi, psi_reduced, ursell, verify_forest_graph_equality,
    verify_ks_recursion_partial, PointConfig, PsiMethod, SelectionRule, UrsellMethod,
};
use crate::kssolver::{
    beta_min_random, tn_direct_table, CellSelection, DomainMask, TnModel, TnTable,
};
use crate::models::{AbstractPolymerSystem, Cell, DiscreteRodSystem, LatticeShapeModel};
use crate::{ratio, Error, Rational, Result};

/// Outcome of one seeded property suite.
#[derive(Debug)]
pub struct SuiteOutcome {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub counterexamples: Vec<String>,
    pub stats: BTreeMap<String, String>,
}

impl SuiteOutcome {
    fn new(suite: &str, seed: u64, trials: u64) -> Self {
        SuiteOutcome {
            suite: suite.to_string(),
            seed,
            trials,
            counterexamples: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub const SUITE_NAMES: [&str; 10] = [
    "forest-graph",
    "psi-methods",
    "psi-factorization",
    "altsign",
    "phirecurr",
    "prec",
    "ks-recursion",
    "beta",
    "subadditivity",
    "tn-oracle",
];

/// Runs one named identity suite with the given seed and trial count.
/// An optional fixed Mayer configuration is checked in addition to the
/// random instances (suites that take one reject unsuitable inputs with
/// a contract error).
pub fn run_suite(
    name: &str,
    seed: u64,
    trials: u64,
    fixed: Option<&PointConfig>,
) -> Result<SuiteOutcome> {
    match name {
        "forest-graph" => forest_graph_suite(seed, trials, fixed),
        "psi-methods" => psi_methods_suite(seed, trials, fixed),
        "psi-factorization" => psi_factorization_suite(seed, trials, fixed),
        "altsign" => altsign_suite(seed, trials, fixed),
        "phirecurr" => phirecurr_suite(seed, trials),
        "prec" => prec_suite(seed, trials),
        "ks-recursion" => ks_recursion_suite(seed, trials),
        "beta" => beta_suite(seed, trials),
        "subadditivity" => subadditivity_suite(seed, trials),
        "tn-oracle" => tn_oracle_suite(),
        other => Err(Error::config(format!(
            "unknown suite {other:?}; valid: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

fn random_hard_core(rng: &mut ChaCha8Rng, size: usize) -> PointConfig {
    let mut flags = vec![false; size * size];
    for i in 0..size {
        for j in (i + 1)..size {
            let f = rng.gen_bool(0.5);
            flags[i * size + j] = f;
        }
    }
    PointConfig::hard_core(size, |i, j| flags[i.min(j) * size + i.max(j)])
}

fn random_rational_config(rng: &mut ChaCha8Rng, size: usize) -> PointConfig {
    let mut vals = vec![Rational::zero(); size * size];
    for i in 0..size {
        for j in (i + 1)..size {
            let denom = rng.gen_range(1..=8i64);
            let numer = rng.gen_range(0..=denom);
            vals[i * size + j] = ratio(-numer, denom);
        }
    }
    PointConfig::from_fn(size, |i, j| vals[i.min(j) * size + i.max(j)].clone())
}

fn forest_graph_suite(
    seed: u64,
    trials: u64,
    fixed: Option<&PointConfig>,
) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("forest-graph", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check = |n: usize, k: usize, cfg: &PointConfig, out: &mut SuiteOutcome| -> Result<()> {
        let cmp = verify_forest_graph_equality(n, k, cfg)?;
        if !cmp.equal {
            out.counterexamples.push(format!(
                "n={n} k={k}: forest side {} != graph side {}",
                cmp.forest_side, cmp.graph_side
            ));
        }
        Ok(())
    };
    if let Some(cfg) = fixed {
        let total = cfg.size();
        check(1.max(total / 2), total - 1.max(total / 2), cfg, &mut out)?;
    }
    for _ in 0..trials {
        let total = rng.gen_range(2..=7usize);
        let n = rng.gen_range(1..total);
        let k = total - n;
        let cfg = random_hard_core(&mut rng, total);
        check(n, k, &cfg, &mut out)?;
    }
    Ok(out)
}

fn psi_methods_suite(
    seed: u64,
    trials: u64,
    fixed: Option<&PointConfig>,
) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("psi-methods", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check = |n: usize, cfg: &PointConfig, out: &mut SuiteOutcome| -> Result<()> {
        let brute = psi(n, cfg, PsiMethod::Brute)?;
        let parts = psi(n, cfg, PsiMethod::Partitions)?;
        let rec_f = psi(n, cfg, PsiMethod::Recursion(SelectionRule::First))?;
        let rec_l = psi(n, cfg, PsiMethod::Recursion(SelectionRule::Last))?;
        if brute != parts || brute != rec_f || brute != rec_l {
            out.counterexamples.push(format!(
                "n={n}: brute {brute}, partitions {parts}, recursion(first) {rec_f}, recursion(last) {rec_l}"
            ));
        }
        let u_brute = ursell(cfg, UrsellMethod::Brute)?;
        let u_rec = ursell(cfg, UrsellMethod::Recurrence)?;
        if u_brute != u_rec {
            out.counterexamples.push(format!(
                "ursell mismatch: brute {u_brute}, recurrence {u_rec}"
            ));
        }
        Ok(())
    };
    if let Some(cfg) = fixed {
        if cfg.size() > 6 {
            return Err(Error::contract(
                "psi-methods fixed configurations are limited to 6 points",
            ));
        }
        check(1.max(cfg.size() / 2), cfg, &mut out)?;
    }
    for t in 0..trials {
        let total = rng.gen_range(2..=6usize);
        let n = rng.gen_range(1..total);
        let cfg = if t % 2 == 0 {
            random_hard_core(&mut rng, total)
        } else {
            random_rational_config(&mut rng, total)
        };
        check(n, &cfg, &mut out)?;
    }
    Ok(out)
}

fn psi_factorization_suite(
    seed: u64,
    trials: u64,
    fixed: Option<&PointConfig>,
) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("psi-factorization", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check = |n: usize, cfg: &PointConfig, out: &mut SuiteOutcome| -> Result<()> {
        let full = psi(n, cfg, PsiMethod::Brute)?;
        let reduced = psi_reduced(n, cfg)?;
        let mut root_product = Rational::one();
        for i in 0..n {
            for j in (i + 1)..n {
                root_product *= cfg.one_plus_f(i, j);
            }
        }
        if full != root_product * reduced {
            out.counterexamples
                .push(format!("n={n}: psi does not factor through psi_reduced"));
        }
        Ok(())
    };
    if let Some(cfg) = fixed {
        check(1.max(cfg.size() / 2), cfg, &mut out)?;
    }
    for t in 0..trials {
        let total = rng.gen_range(2..=6usize);
        let n = rng.gen_range(1..total);
        let cfg = if t % 2 == 0 {
            random_hard_core(&mut rng, total)
        } else {
            random_rational_config(&mut rng, total)
        };
        check(n, &cfg, &mut out)?;

        // Merged-domain identity on hard-core subset polymers: with
        // pairwise-disjoint root cell sets, the reduced coefficient
        // equals the Ursell function of the union domain.
        let n_roots = rng.gen_range(1..=3usize);
        let k = rng.gen_range(0..=2usize);
        let mut roots: Vec<BTreeSet<Cell>> = Vec::new();
        let mut used: BTreeSet<Cell> = BTreeSet::new();
        for _ in 0..n_roots {
            let set: BTreeSet<Cell> = random_cells(&mut rng, 5, 2)
                .into_iter()
                .filter(|c| !used.contains(c))
                .collect();
            if set.is_empty() {
                continue;
            }
            used.extend(set.iter().cloned());
            roots.push(set);
        }
        if roots.is_empty() {
            continue;
        }
        let ys: Vec<BTreeSet<Cell>> = (0..k).map(|_| random_dimer(&mut rng, 5)).collect();
        let mut points: Vec<BTreeSet<Cell>> = roots.clone();
        points.extend(ys.iter().cloned());
        let overlap_cfg = PointConfig::hard_core(points.len(), |i, j| {
            points[i].iter().any(|c| points[j].contains(c))
        });
        let reduced = psi_reduced(roots.len(), &overlap_cfg)?;
        let mut merged: BTreeSet<Cell> = BTreeSet::new();
        for r in &roots {
            merged.extend(r.iter().cloned());
        }
        let mut union_points = vec![merged];
        union_points.extend(ys.iter().cloned());
        let phi_union = phi_of_sets(&union_points)?;
        if reduced != phi_union {
            out.counterexamples.push(format!(
                "merged-domain identity: psi_reduced {reduced} != phi(union) {phi_union}"
            ));
        }
    }
    Ok(out)
}

fn altsign_suite(seed: u64, trials: u64, fixed: Option<&PointConfig>) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("altsign", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(cfg) = fixed {
        // Rejects positive Mayer entries with a contract error.
        let n = 1.max(cfg.size() / 2);
        if !alternating_sign_check(n, cfg)? {
            out.counterexamples.push("fixed configuration".to_string());
        }
    }
    for _ in 0..trials {
        let total = rng.gen_range(2..=8usize);
        let n = rng.gen_range(1..total);
        let cfg = random_hard_core(&mut rng, total);
        if !alternating_sign_check(n, &cfg)? {
            out.counterexamples
                .push(format!("n={n} k={} violates the sign rule", total - n));
        }
    }
    Ok(out)
}

/// Ursell value of a tuple of cell sets under hard-core overlap.
fn phi_of_sets(sets: &[BTreeSet<Cell>]) -> Result<Rational> {
    let cfg = PointConfig::hard_core(sets.len(), |i, j| {
        sets[i].iter().any(|c| sets[j].contains(c))
    });
    ursell(&cfg, UrsellMethod::Brute)
}

fn random_dimer(rng: &mut ChaCha8Rng, span: i64) -> BTreeSet<Cell> {
    let a = rng.gen_range(-span..span);
    [vec![a], vec![a + 1]].into_iter().collect()
}

fn random_cells(rng: &mut ChaCha8Rng, span: i64, max_len: usize) -> BTreeSet<Cell> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| vec![rng.gen_range(-span..span)]).collect()
}

/// One-cell peeling recursion of the Ursell coefficients, checked on
/// random dimer clusters: `phi_{1+k}(D' u {x}, Y..)` equals
/// `phi_{1+k}(D', Y..)` minus the terms where one `Y_i` owns `x` and is
/// disjoint from `D'`.
fn phirecurr_suite(seed: u64, trials: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("phirecurr", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let k = rng.gen_range(1..=3usize);
        let ys: Vec<BTreeSet<Cell>> = (0..k).map(|_| random_dimer(&mut rng, 4)).collect();
        let dprime = random_cells(&mut rng, 4, 2);
        let x: Cell = loop {
            let c = vec![rng.gen_range(-4..4i64)];
            if !dprime.contains(&c) {
                break c;
            }
        };
        let mut d_with_x = dprime.clone();
        d_with_x.insert(x.clone());

        let mut lhs_points = vec![d_with_x];
        lhs_points.extend(ys.iter().cloned());
        let lhs = phi_of_sets(&lhs_points)?;

        let mut rhs_points = vec![dprime.clone()];
        rhs_points.extend(ys.iter().cloned());
        let mut rhs = phi_of_sets(&rhs_points)?;
        for i in 0..k {
            if ys[i].contains(&x) && ys[i].iter().all(|c| !dprime.contains(c)) {
                let mut merged = dprime.clone();
                merged.extend(ys[i].iter().cloned());
                let mut pts = vec![merged];
                for (j, y) in ys.iter().enumerate() {
                    if j != i {
                        pts.push(y.clone());
                    }
                }
                rhs -= phi_of_sets(&pts)?;
            }
        }
        if lhs != rhs {
            out.counterexamples
                .push(format!("k={k}: lhs {lhs} != rhs {rhs}"));
        }
    }
    Ok(out)
}

/// The multi-cell generalization: `D_0` is split off as a block and all
/// subsets `L` of the cluster attach to it.
fn prec_suite(seed: u64, trials: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("prec", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let k = rng.gen_range(1..=3usize);
        let ys: Vec<BTreeSet<Cell>> = (0..k).map(|_| random_dimer(&mut rng, 4)).collect();
        // D0 is a two-cell set, D1 disjoint from it.
        let d0 = loop {
            let c = random_cells(&mut rng, 4, 2);
            if c.len() == 2 {
                break c;
            }
        };
        let d1: BTreeSet<Cell> = random_cells(&mut rng, 4, 2)
            .into_iter()
            .filter(|c| !d0.contains(c))
            .collect();

        let mut union = d0.clone();
        union.extend(d1.iter().cloned());
        let mut lhs_points = vec![union];
        lhs_points.extend(ys.iter().cloned());
        let lhs = phi_of_sets(&lhs_points)?;

        let mut rhs = Rational::zero();
        for lmask in 0..(1usize << k) {
            let l: Vec<usize> = (0..k).filter(|i| lmask & (1 << i) != 0).collect();
            // I(D0; D1; Y_L): each selected Y meets D0 and avoids D1,
            // and the selected Ys are pairwise disjoint.
            let admissible = l.iter().all(|&i| {
                ys[i].iter().any(|c| d0.contains(c))
                    && ys[i].iter().all(|c| !d1.contains(c))
            }) && l
                .iter()
                .enumerate()
                .all(|(a, &i)| {
                    l[a + 1..]
                        .iter()
                        .all(|&j| ys[i].iter().all(|c| !ys[j].contains(c)))
                });
            if !admissible {
                continue;
            }
            let mut merged = d1.clone();
            for &i in &l {
                merged.extend(ys[i].iter().cloned());
            }
            let mut pts = vec![merged];
            for (j, y) in ys.iter().enumerate() {
                if !l.contains(&j) {
                    pts.push(y.clone());
                }
            }
            let term = phi_of_sets(&pts)?;
            if l.len().is_multiple_of(2) {
                rhs += term;
            } else {
                rhs -= term;
            }
        }
        if lhs != rhs {
            out.counterexamples
                .push(format!("k={k}: lhs {lhs} != rhs {rhs}"));
        }
    }
    Ok(out)
}

fn ks_recursion_suite(seed: u64, trials: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("ks-recursion", seed, trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let polymers = rng.gen_range(2..=4usize);
        let ids: Vec<String> = (0..polymers).map(|i| format!("d{i}")).collect();
        let acts: Vec<Rational> = (0..polymers)
            .map(|_| {
                let denom = rng.gen_range(1..=6i64);
                ratio(rng.gen_range(0..=denom), denom)
            })
            .collect();
        // Dimers on a line: adjacent indices collide.
        let mut pairs = Vec::new();
        for a in 0..polymers {
            for b in (a + 1)..polymers {
                if b - a == 1 {
                    pairs.push((a, b));
                }
            }
        }
        let system = AbstractPolymerSystem::new(ids, acts, &pairs)?;
        let rule = if rng.gen_bool(0.5) {
            SelectionRule::First
        } else {
            SelectionRule::Last
        };
        let outcome = verify_ks_recursion_partial(&system, 2, 4, rule, 2_000_000)?;
        if !outcome.holds {
            out.counterexamples
                .push(format!("{:?}", outcome.mismatch));
        }
    }
    Ok(out)
}

fn beta_suite(seed: u64, trials: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("beta", seed, trials);
    let sweep = beta_min_random(trials, seed, 8, 3.0)?;
    out.stats
        .insert("min_beta".to_string(), format!("{:.15}", sweep.min_beta));
    if sweep.min_beta < 1.0 - 1e-12 {
        out.counterexamples
            .push(format!("minimum beta {} < 1", sweep.min_beta));
    }
    Ok(out)
}

fn subadditivity_suite(seed: u64, trials: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("subadditivity", seed, trials);
    let models = [
        LatticeShapeModel::rod(2, Rational::zero())?,
        LatticeShapeModel::rod(3, Rational::zero())?,
        LatticeShapeModel::hypercube(2, 2, Rational::zero())?,
    ];
    for (i, model) in models.iter().enumerate() {
        let res = model.strong_subadditivity_check(trials, seed.wrapping_add(i as u64));
        if !res.holds {
            out.counterexamples
                .push(format!("model {i}: {:?}", res.counterexample));
        }
    }
    Ok(out)
}

/// Exact oracle equality between the peeling recursion and the direct
/// tuple sums: dimers and trimers, every domain in a width-8 window,
/// truncation orders up to 8, three activities. The recursion runs
/// with both the leftmost and the rightmost selection rule; all three
/// routes must agree exactly.
fn tn_oracle_suite() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("tn-oracle", 0, 0);
    let zs = [ratio(1, 10), ratio(1, 4), ratio(1, 1)];
    let mut comparisons = 0u64;
    for rod_len in [2u32, 3] {
        let rods = DiscreteRodSystem::single(rod_len)?;
        for mask in 1u16..(1 << 8) {
            let cells: Vec<Cell> = (0..8)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| vec![i as i64])
                .collect();
            let domain = DomainMask::new(1, &cells)?;
            let table = tn_direct_table(&TnModel::Rods(&rods), &domain, 8)?;
            for z in &zs {
                let mut left = TnTable::new(TnModel::Rods(&rods), z.clone())?;
                let mut right = TnTable::new(TnModel::Rods(&rods), z.clone())?
                    .with_selection(CellSelection::Rightmost);
                for n in 1..=8u32 {
                    let direct = table.eval(n, z)?;
                    let leftmost = left.value(&domain, n)?;
                    let rightmost = right.value(&domain, n)?;
                    comparisons += 1;
                    if direct != leftmost || direct != rightmost {
                        out.counterexamples.push(format!(
                            "rod_len={rod_len} domain={cells:?} N={n} z={z}: direct {direct}, leftmost {leftmost}, rightmost {rightmost}"
                        ));
                    }
                }
            }
        }
    }
    out.trials = comparisons;
    out.stats
        .insert("comparisons".to_string(), comparisons.to_string());
    Ok(out)
}
