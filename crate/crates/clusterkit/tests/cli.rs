//! End-to-end tests of the command-line surface: exit codes, report
//! determinism, and the documented formats.

use std::fs;
use std::path::Path;

use clusterkit::cli::run_with;

fn write_config(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn models_config(dir: &Path) -> std::path::PathBuf {
    write_config(
        dir,
        "models.json",
        r#"{"schema":1,"models":[
            {"kind":"lattice-shape","id":"cubes-2x2","dimension":2,
             "cells":[[0,0],[0,1],[1,0],[1,1]],"activity":"1/20"},
            {"kind":"rods-discrete","id":"dimers","lengths":[2]},
            {"kind":"rods-continuous","id":"tonks","lengths":[1.0]},
            {"kind":"balls","id":"spheres","dimension":3,"radii":[1.0]}
        ]}"#,
    )
}

#[test]
fn criteria_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = models_config(dir.path());
    let out1 = dir.path().join("run1.json");
    let out2 = dir.path().join("run2.json");
    for out in [&out1, &out2] {
        let code = run_with([
            "clusterkit",
            "criteria",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let a = fs::read(&out1).unwrap();
    let b = fs::read(&out2).unwrap();
    assert_eq!(a, b, "reports differ between identical runs");
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains("\"config_digest\": \"sha256:"));
    assert!(text.contains("\"version\""));
}

#[test]
fn criteria_csv_has_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = models_config(dir.path());
    let out = dir.path().join("report.csv");
    let code = run_with([
        "clusterkit",
        "criteria",
        "--config",
        cfg.to_str().unwrap(),
        "--criterion",
        "fp",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    // fp is not applicable to continuous rods or balls.
    assert_eq!(code, 2);

    let cfg2 = write_config(
        dir.path(),
        "cubes.json",
        r#"{"schema":1,"models":[{"kind":"lattice-shape","id":"cubes-2x2","dimension":2,
            "cells":[[0,0],[0,1],[1,0],[1,1]],"activity":"1/20"}]}"#,
    );
    let code = run_with([
        "clusterkit",
        "criteria",
        "--config",
        cfg2.to_str().unwrap(),
        "--criterion",
        "fp,new",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "model_id,criterion,z_max,optimal_param,attained,strict,evaluations"
    );
    let fp_row = lines.next().unwrap();
    assert!(fp_row.starts_with("cubes-2x2,fp,5.7271"), "{fp_row}");
    let new_row = lines.next().unwrap();
    assert!(new_row.starts_with("cubes-2x2,new,6.0833"), "{new_row}");
}

#[test]
fn parallel_runs_match_sequential() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = models_config(dir.path());
    let seq = dir.path().join("seq.json");
    let par = dir.path().join("par.json");
    assert_eq!(
        run_with([
            "clusterkit",
            "criteria",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            seq.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(
        run_with([
            "clusterkit",
            "criteria",
            "--config",
            cfg.to_str().unwrap(),
            "--parallel",
            "--out",
            par.to_str().unwrap(),
        ]),
        0
    );
    assert_eq!(fs::read(&seq).unwrap(), fs::read(&par).unwrap());
}

#[test]
fn malformed_shape_exits_2_citing_shape() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{"schema":1,"models":[{"kind":"lattice-shape","id":"bad","dimension":2,"cells":[]}]}"#,
    );
    let code = run_with([
        "clusterkit",
        "criteria",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_suite_exits_2() {
    assert_eq!(
        run_with(["clusterkit", "verify", "--suite", "not-a-suite"]),
        2
    );
}

#[test]
fn verify_suite_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.json");
    let code = run_with([
        "clusterkit",
        "verify",
        "--suite",
        "beta,subadditivity",
        "--seed",
        "7",
        "--trials",
        "150",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"seed\": 7"));
    assert!(text.contains("min_beta"));
}

#[test]
fn altsign_with_positive_entry_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "positive.json",
        r#"{"schema":1,"models":[{"kind":"point-config","id":"pts",
            "mayer":[["0","1/2"],["1/2","0"]]}]}"#,
    );
    let code = run_with([
        "clusterkit",
        "verify",
        "--suite",
        "altsign",
        "--trials",
        "5",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn point_config_feeds_identity_suites() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "points.json",
        r#"{"schema":1,"models":[{"kind":"point-config","id":"pts",
            "mayer":[["0","-1","-1/2"],["-1","0","0"],["-1/2","0","0"]]}]}"#,
    );
    let code = run_with([
        "clusterkit",
        "verify",
        "--suite",
        "psi-methods,psi-factorization",
        "--trials",
        "10",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn tn_both_verifies_equality_and_prints_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = models_config(dir.path());
    let out = dir.path().join("tn.json");
    let code = run_with([
        "clusterkit",
        "tn",
        "--config",
        cfg.to_str().unwrap(),
        "--model",
        "dimers",
        "--domain",
        "0",
        "--n",
        "3",
        "--z",
        "1/10",
        "--mode",
        "both",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"exact\": \"6/5\""), "{text}");
    assert!(text.contains("\"direct_equal\": true"));
}

#[test]
fn tn_empty_domain_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = models_config(dir.path());
    let out = dir.path().join("tn_empty.json");
    let code = run_with([
        "clusterkit",
        "tn",
        "--config",
        cfg.to_str().unwrap(),
        "--model",
        "dimers",
        "--domain",
        "",
        "--n",
        "4",
        "--z",
        "1/4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.matches("\"exact\": \"1\"").count() == 4, "{text}");
}

#[test]
fn tn_direct_capacity_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = models_config(dir.path());
    let code = run_with([
        "clusterkit",
        "tn",
        "--config",
        cfg.to_str().unwrap(),
        "--model",
        "dimers",
        "--domain",
        "0",
        "--n",
        "9",
        "--z",
        "1/10",
        "--mode",
        "direct",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn beta_runs_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("beta.json");
    let code = run_with([
        "clusterkit",
        "beta",
        "--trials",
        "400",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"min_beta\""));
}

#[test]
fn verify_forest_graph_suite_exits_0() {
    let code = run_with([
        "clusterkit",
        "verify",
        "--suite",
        "forest-graph",
        "--seed",
        "7",
        "--trials",
        "30",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn abstract_system_criteria_match_lattice_values() {
    let dir = tempfile::tempdir().unwrap();
    // Three dimers around a center: the worst neighborhood matches the
    // translation-invariant dimer model, so kp and fp agree with the
    // lattice closed forms 1/(3e) and 1/5.
    let cfg = write_config(
        dir.path(),
        "abstract.json",
        r#"{"schema":1,"models":[{"kind":"abstract","id":"dimer-triple",
            "polymers":["left","mid","right"],
            "activities":["1/10","1/10","1/10"],
            "incompatible":[["left","mid"],["mid","right"]]}]}"#,
    );
    let out = dir.path().join("abs.csv");
    let code = run_with([
        "clusterkit",
        "criteria",
        "--config",
        cfg.to_str().unwrap(),
        "--criterion",
        "kp,fp",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let csv = fs::read_to_string(&out).unwrap();
    let kp_row = csv.lines().nth(1).unwrap();
    assert!(kp_row.starts_with("dimer-triple,kp,1.2262648"), "{kp_row}");
    let fp_row = csv.lines().nth(2).unwrap();
    assert!(fp_row.starts_with("dimer-triple,fp,2.0000000"), "{fp_row}");
}
