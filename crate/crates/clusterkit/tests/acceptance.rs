//! Acceptance suite: one test per acceptance criterion, each printing a
//! PASS/FAIL line with the measured values and the pinned tolerance.
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines.

use std::time::Instant;

use clusterkit::cli::suites::run_suite;
use clusterkit::criteria::{
    evaluate, gk_cont_bound, hardsphere_bound, hypercube_closed_form, lgoof_bound,
    tonks_continuous_bound, tonks_discrete_bound, tonks_radius_fixed_point, CriterionId,
    ModelRef, OptimizeOptions,
};
use clusterkit::kssolver::{
    bfp_condition_check, beta_min_random, stabilization_probe, DomainMask, SetAnsatz,
    StabilizationOutcome, TnModel, TnTable,
};
use clusterkit::models::{
    BallSystem, ContinuousRodSystem, DiscreteRodSystem, LatticeShapeModel, DEFAULT_SUBSET_CAP,
};
use clusterkit::ratio;

fn opts() -> OptimizeOptions {
    OptimizeOptions::default()
}

fn cubes_2x2() -> LatticeShapeModel {
    LatticeShapeModel::hypercube(2, 2, ratio(0, 1)).unwrap()
}

/// Independent dimer oracle: the pure hard-dimer partition function
/// obeys Z_n(-t) = Z_{n-1}(-t) - t Z_{n-2}(-t) and stays positive for
/// every n exactly when t is at most the convergence radius. Bisection
/// on the first sign change recovers the radius without any cluster
/// expansion machinery.
fn dimer_radius_transfer_matrix() -> f64 {
    let positive_for_all = |t: f64| -> bool {
        let (mut a, mut b) = (1.0f64, 1.0f64);
        for _ in 0..200_000 {
            let c = b - t * a;
            if c <= 0.0 {
                return false;
            }
            let s = b.max(c);
            a = b / s;
            b = c / s;
        }
        true
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if positive_for_all(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn acceptance_01_fp_bound_cubes() {
    let start = Instant::now();
    let model = cubes_2x2();
    let report = evaluate(&ModelRef::Lattice(&model), CriterionId::Fp, "cubes-2x2", opts())
        .unwrap();
    let elapsed = start.elapsed();
    let diff = (report.z_max - 0.057271).abs();
    let ok = diff <= 5e-6 && elapsed.as_secs_f64() < 1.0;
    println!(
        "[acceptance 01] {} - FP bound on 2x2 cubes: z_max = {:.9} (target 0.057271 +- 5e-6, diff {:.1e}, {:.0} ms)",
        if ok { "PASS" } else { "FAIL" },
        report.z_max,
        diff,
        elapsed.as_secs_f64() * 1e3
    );
    assert!(diff <= 5e-6, "z_max {} misses 0.057271", report.z_max);
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
}

#[test]
fn acceptance_02_new_bound_cubes() {
    let start = Instant::now();
    let model = cubes_2x2();
    let mref = ModelRef::Lattice(&model);
    let new = evaluate(&mref, CriterionId::New, "cubes-2x2", opts()).unwrap();
    let fp = evaluate(&mref, CriterionId::Fp, "cubes-2x2", opts()).unwrap();
    let elapsed = start.elapsed();
    let diff = (new.z_max - 0.060833).abs();
    let ratio_to_fp = new.z_max / fp.z_max;
    let ok = diff <= 5e-6 && (ratio_to_fp - 1.062).abs() < 1.5e-3 && elapsed.as_secs_f64() < 1.0;
    println!(
        "[acceptance 02] {} - new-condition bound on 2x2 cubes: z_max = {:.9} (target 0.060833 +- 5e-6), ratio to FP = {:.4} (~1.062), {:.0} ms",
        if ok { "PASS" } else { "FAIL" },
        new.z_max,
        ratio_to_fp,
        elapsed.as_secs_f64() * 1e3
    );
    assert!(diff <= 5e-6, "z_max {} misses 0.060833", new.z_max);
    assert!((ratio_to_fp - 1.062).abs() < 1.5e-3, "ratio {ratio_to_fp}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
}

#[test]
fn acceptance_03_cube_neighborhood_combinatorics() {
    let model = cubes_2x2();
    let (system, center) = model.neighborhood_system().unwrap();
    let nb = system.neighborhood(center, DEFAULT_SUBSET_CAP).unwrap();
    let counts = nb.subset_counts_by_size();
    let multiset = nb.closure_multiset();
    let expected_counts = vec![1, 9, 16, 8, 1];
    let expected_multiset = vec![
        (0, 0, 1),
        (1, 9, 9),
        (2, 15, 6),
        (2, 16, 8),
        (2, 17, 2),
        (3, 21, 8),
        (4, 25, 1),
    ];
    let ok = counts == expected_counts && multiset == expected_multiset;
    println!(
        "[acceptance 03] {} - 2x2-cube neighborhood: independence coefficients {:?}, closure multiset {:?} (exact integer match)",
        if ok { "PASS" } else { "FAIL" },
        counts,
        multiset
    );
    assert_eq!(counts, expected_counts);
    assert_eq!(multiset, expected_multiset);
}

#[test]
fn acceptance_04_hypercube_closed_form() {
    let mut worst = 0.0f64;
    for d in 1..=3 {
        for k in 2..=4 {
            let closed = hypercube_closed_form(d, k).unwrap();
            let model = LatticeShapeModel::hypercube(d, k, ratio(0, 1)).unwrap();
            let numeric = lgoof_bound(&model, "cube", opts()).unwrap();
            worst = worst.max((closed - numeric.z_max).abs());
        }
    }
    let inv_e = (-1.0f64).exp();
    let mut monotone = true;
    let mut above = true;
    let mut prev = f64::INFINITY;
    let mut last = f64::NAN;
    for d in 1..=20 {
        let normalized = hypercube_closed_form(d, 2).unwrap() * 3f64.powi(d as i32);
        monotone &= normalized < prev;
        above &= normalized > inv_e;
        prev = normalized;
        last = normalized;
    }
    let ok = worst <= 1e-9 && monotone && above;
    println!(
        "[acceptance 04] {} - hypercube closed form: max |closed - optimizer| = {:.2e} (tol 1e-9) over d,k in {{1,2,3}}x{{2,3,4}}; k=2 normalized bound decreases toward 1/e (d=20 value {:.9} > 1/e = {:.9})",
        if ok { "PASS" } else { "FAIL" },
        worst,
        last,
        inv_e
    );
    assert!(worst <= 1e-9);
    assert!(monotone && above);
}

#[test]
fn acceptance_05_hard_sphere_closed_form() {
    let mut worst = 0.0f64;
    for d in 1..=10 {
        // hardsphere_bound cross-checks against its own optimizer run;
        // the single-type ball criterion is the same objective by an
        // independent code path.
        let closed = hardsphere_bound(d, 1.0, "spheres", opts()).unwrap();
        let balls = BallSystem::new(d, vec![1.0], vec![1.0]).unwrap();
        let numeric = gk_cont_bound(&balls, "spheres", opts()).unwrap();
        worst = worst.max((closed.z_max - numeric.z_max).abs());
    }
    let d1 = hardsphere_bound(1, 1.0, "rods", opts()).unwrap();
    let ok = worst <= 1e-9 && (d1.z_max - 0.125).abs() < 1e-12;
    println!(
        "[acceptance 05] {} - hard spheres: max |closed - optimizer| = {:.2e} (tol 1e-9) for d = 1..10; d=1 value {:.9} (= 0.125)",
        if ok { "PASS" } else { "FAIL" },
        worst,
        d1.z_max
    );
    assert!(worst <= 1e-9);
    assert!((d1.z_max - 0.125).abs() < 1e-12);
}

#[test]
fn acceptance_06_tonks_dimers_and_ordering_chain() {
    let dimers = DiscreteRodSystem::single(2).unwrap();
    let tonks = tonks_discrete_bound(&dimers, "dimers", opts()).unwrap();
    let diff = (tonks.z_max - 0.25).abs();
    let alpha_diff = (tonks.optimal_param - 2f64.ln()).abs();

    let tm_radius = dimer_radius_transfer_matrix();
    let fixed_point = tonks_radius_fixed_point(&dimers, 1e-10).unwrap();

    let model = ModelRef::RodsDiscrete(&dimers);
    let chain: Vec<f64> = [
        CriterionId::Kp,
        CriterionId::Gk,
        CriterionId::Lgoof,
        CriterionId::Fp,
        CriterionId::TonksDiscrete,
    ]
    .iter()
    .map(|&c| evaluate(&model, c, "dimers", opts()).unwrap().z_max)
    .collect();
    let margins_ok = chain.windows(2).all(|w| w[1] - w[0] > 1e-3);
    let closed_forms = [
        1.0 / (3.0 * std::f64::consts::E),
        0.125,
        1.0 / (3.0 * 3f64.sqrt()),
        0.2,
        0.25,
    ];
    let chain_ok = chain
        .iter()
        .zip(closed_forms)
        .all(|(got, want)| (got - want).abs() < 1e-8);

    let ok = diff <= 1e-9
        && alpha_diff < 1e-5
        && (tm_radius - 0.25).abs() < 1e-7
        && (fixed_point - 0.25).abs() < 1e-8
        && margins_ok
        && chain_ok;
    println!(
        "[acceptance 06] {} - discrete Tonks dimers: bound {:.10} (target 0.25 +- 1e-9, e^alpha = {:.6}); transfer-matrix oracle {:.9}; fixed-point {:.9}; chain kp < gk < lgoof < fp < tonks = {:?} with margins > 1e-3",
        if ok { "PASS" } else { "FAIL" },
        tonks.z_max,
        tonks.optimal_param.exp(),
        tm_radius,
        fixed_point,
        chain
    );
    assert!(diff <= 1e-9);
    assert!(alpha_diff < 1e-5);
    assert!((tm_radius - 0.25).abs() < 1e-7, "oracle gave {tm_radius}");
    assert!((fixed_point - 0.25).abs() < 1e-8);
    assert!(margins_ok && chain_ok, "chain {chain:?}");
}

#[test]
fn acceptance_07_continuous_tonks() {
    let mut worst = 0.0f64;
    let mut values = Vec::new();
    for len in [0.5f64, 1.0, 2.0] {
        let rods = ContinuousRodSystem::new(vec![len], vec![1.0]).unwrap();
        let r = tonks_continuous_bound(&rods, "tonks", opts()).unwrap();
        let target = 1.0 / (std::f64::consts::E * len);
        worst = worst.max((r.z_max - target).abs());
        values.push((len, r.z_max));
    }
    let ok = worst <= 1e-9;
    println!(
        "[acceptance 07] {} - continuous Tonks: {:?}, max |z_max - 1/(eL)| = {:.2e} (tol 1e-9)",
        if ok { "PASS" } else { "FAIL" },
        values,
        worst
    );
    assert!(worst <= 1e-9);
}

#[test]
fn acceptance_08_exact_identity_suites() {
    let start = Instant::now();
    let mut all_ok = true;
    for name in [
        "forest-graph",
        "psi-methods",
        "psi-factorization",
        "altsign",
        "phirecurr",
        "prec",
        "ks-recursion",
    ] {
        let out = run_suite(name, 20260810, 200, None).unwrap();
        let ok = out.passed();
        all_ok &= ok;
        println!(
            "[acceptance 08] {} - suite {name}: {} trials, {} counterexamples",
            if ok { "PASS" } else { "FAIL" },
            out.trials,
            out.counterexamples.len()
        );
        assert!(ok, "{name}: {:?}", out.counterexamples);
    }
    let elapsed = start.elapsed();
    all_ok &= elapsed.as_secs_f64() < 120.0;
    println!(
        "[acceptance 08] {} - all exact-identity suites in {:.1} s (budget 120 s)",
        if all_ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
}

#[test]
fn acceptance_09a_tn_oracle_equality() {
    let out = run_suite("tn-oracle", 0, 0, None).unwrap();
    let ok = out.passed();
    println!(
        "[acceptance 09a] {} - partial-sum oracle: recursion = direct sums on {} exact comparisons (dimers and trimers, width-8 window, N <= 8, z in {{1/10, 1/4, 1}})",
        if ok { "PASS" } else { "FAIL" },
        out.stats.get("comparisons").map(String::as_str).unwrap_or("?")
    );
    assert!(ok, "{:?}", out.counterexamples);
}

#[test]
fn acceptance_09b_stabilization_probe() {
    let dimers = DiscreteRodSystem::single(2).unwrap();
    let site = DomainMask::new(1, &[vec![0]]).unwrap();

    let mut above = TnTable::new(TnModel::Rods(&dimers), ratio(3, 10)).unwrap();
    let at_030 = stabilization_probe(&mut above, &site, 1e-8, 64, 1e6).unwrap();
    let above_ok = !matches!(at_030, StabilizationOutcome::Stabilized { .. });
    println!(
        "[acceptance 09b] {} - z = 0.3 (above 1/4) does not stabilize within N <= 64: {:?}",
        if above_ok { "PASS" } else { "FAIL" },
        at_030
    );
    assert!(above_ok);

    let mut below = TnTable::new(TnModel::Rods(&dimers), ratio(1, 5)).unwrap();
    let at_020 = stabilization_probe(&mut below, &site, 1e-8, 64, 1e6).unwrap();
    let below_ok = matches!(at_020, StabilizationOutcome::Stabilized { .. });
    println!(
        "[acceptance 09b] {} - z = 0.2 (below 1/4) stabilizes to relative 1e-8 within N <= 64: {:?}",
        if below_ok { "PASS" } else { "FAIL" },
        at_020
    );
    if !below_ok {
        // Context for the failure: the geometric tail (4z)^k needs
        // roughly 67 polymers (135 cells) to shrink below 1e-8.
        let mut wide = TnTable::new(TnModel::Rods(&dimers), ratio(1, 5)).unwrap();
        let wide_probe = stabilization_probe(&mut wide, &site, 1e-8, 160, 1e6).unwrap();
        println!(
            "[acceptance 09b] note - with the ceiling raised to 160 the same probe gives {wide_probe:?}"
        );
    }
    assert!(
        below_ok,
        "T_N({{0}}; 0.2) does not reach relative 1e-8 by N = 64: {at_020:?}"
    );
}

#[test]
fn acceptance_10_beta_lower_bound() {
    let sweep = beta_min_random(1000, 20260810, 8, 3.0).unwrap();
    let ok = sweep.min_beta >= 1.0 - 1e-12;
    println!(
        "[acceptance 10] {} - beta coefficients: min over {} random (Q, mu, U) instances = {:.12} (>= 1 - 1e-12)",
        if ok { "PASS" } else { "FAIL" },
        sweep.trials,
        sweep.min_beta
    );
    assert!(ok, "min beta {}", sweep.min_beta);
}

#[test]
fn acceptance_11_local_condition_checkers() {
    let dimers = DiscreteRodSystem::single(2).unwrap();
    let model = TnModel::Rods(&dimers);
    let window = [(0i64, 6i64)];

    let below = bfp_condition_check(
        &model,
        SetAnsatz::Cardinality { alpha: 2f64.ln() },
        &window,
        5,
        0.12,
        1_000_000,
    )
    .unwrap();

    let mut any_above = false;
    for i in 1..=80 {
        let alpha = i as f64 * 0.05;
        let out = bfp_condition_check(
            &model,
            SetAnsatz::Cardinality { alpha },
            &window,
            5,
            0.2,
            1_000_000,
        )
        .unwrap();
        any_above |= out.holds;
    }
    let ok = below.holds && !any_above;
    println!(
        "[acceptance 11] {} - finite-domain checker with additive ansatz on dimers (domains up to size 5): holds at z = 0.12 < 1/8 ({} domains), fails for every alpha on a grid at z = 0.2 > 1/8",
        if ok { "PASS" } else { "FAIL" },
        below.domains_checked
    );
    assert!(below.holds, "failure: {:?}", below.failure);
    assert!(!any_above);
}
