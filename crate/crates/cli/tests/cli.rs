use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ricf_cli::{load_spec, load_suite, spec_to_toml, CliError};
use ricf_core::SpaceSpec;

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(rel)
}

fn ricf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ricf"))
        .args(args)
        .output()
        .unwrap()
}

fn check(space: &str, suite: &str, extra: &[&str]) -> Output {
    let sp = fixture(&format!("spaces/{space}.toml"));
    let su = fixture(&format!("suites/{suite}.toml"));
    let mut args = vec![
        "check",
        "--space",
        sp.to_str().unwrap(),
        "--suite",
        su.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    ricf(&args)
}

#[test]
fn every_fixture_loads() {
    for dir in ["spaces", "suites"] {
        for entry in std::fs::read_dir(fixture(dir)).unwrap() {
            let p = entry.unwrap().path();
            if dir == "spaces" {
                load_spec(&p).unwrap().build().unwrap();
            } else {
                assert!(
                    !load_suite(&p).unwrap().checks.is_empty(),
                    "{}",
                    p.display()
                );
            }
        }
    }
}

#[test]
fn exit_code_contract() {
    assert_eq!(
        check("round_sphere", "classical", &[]).status.code(),
        Some(0)
    );
    assert_eq!(
        check("euclidean_linear", "necessity", &[]).status.code(),
        Some(1)
    );

    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("vol_b.toml");
    std::fs::write(
        &suite,
        "[[checks]]\ntheorem = \"vol_b\"\nH = 0.0\nk = 0.5\n",
    )
    .unwrap();
    let sp = fixture("spaces/euclidean_linear.toml");
    let out = ricf(&[
        "check",
        "--space",
        sp.to_str().unwrap(),
        "--suite",
        suite.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv
        .lines()
        .skip(1)
        .all(|l| l.ends_with(",unverified_pass") || l.ends_with(",unverified_violation")));

    assert_eq!(ricf(&["check", "--bogus"]).status.code(), Some(3));
    assert_eq!(
        ricf(&["check", "--space", "/nonexistent.toml", "--suite", "x"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(ricf(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_expression_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.toml");
    std::fs::write(
        &p,
        "name = \"bad\"\nn = 3\nr_max = 2.0\n\n[warp]\nexpr = \"sin(\"\n",
    )
    .unwrap();
    assert!(matches!(load_spec(&p), Err(CliError::Invalid { .. })));
    let su = fixture("suites/myers.toml");
    let out = ricf(&[
        "check",
        "--space",
        p.to_str().unwrap(),
        "--suite",
        su.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.toml"));
}

#[test]
fn toml_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("typo.toml");
    std::fs::write(&p, "name = \"x\"\nn = 3\nr_mx = 2.0\n").unwrap();
    match load_spec(&p) {
        Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn empty_suite_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("empty.toml");
    std::fs::write(&suite, "checks = []\n").unwrap();
    let out_path = dir.path().join("out.csv");
    let sp = fixture("spaces/round_sphere.toml");
    let out = ricf(&[
        "check",
        "--space",
        sp.to_str().unwrap(),
        "--suite",
        suite.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&out_path).unwrap(),
        "theorem_id,space,r,R,c,lhs,rhs,margin,status\n"
    );
}

#[test]
fn myers_report_row_and_json() {
    let out = check("sphere_perturbed", "myers", &[]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let myers: Vec<&str> = csv.lines().filter(|l| l.starts_with("myers,")).collect();
    assert_eq!(myers.len(), 1);
    assert!(myers[0].ends_with(",pass"));
    assert!(myers[0].contains("1.6407066132578940e0"));
    assert!(!csv.contains('\r'));

    let out = check("sphere_perturbed", "myers", &["--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["theorem"], "myers");
    assert!(v[0]["samples"].as_array().unwrap().len() == 1);
}

#[test]
fn necessity_reports_first_violation_radius() {
    let out = check("euclidean_linear", "necessity", &["--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = v[0]["metrics"]["first_violation_radius"].as_f64().unwrap();
    assert!(r > 0.0 && r < 100.0);
    assert!(!v[0]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn overrides_apply() {
    let out = check("round_sphere", "classical", &["--grid", "16"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().filter(|l| l.starts_with("mc_a,")).count(), 16);
    assert_eq!(
        check("round_sphere", "classical", &["--tol-margin", "0.5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        check("round_sphere", "classical", &["--seed", "3"])
            .status
            .code(),
        Some(3)
    );
    let a = check("generated_bounded", "bounded", &["--seed", "3"]);
    let b = check("generated_bounded", "bounded", &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn gen_output_round_trips() {
    let out = ricf(&[
        "gen", "--n", "3", "--H", "-1", "--mode", "f-slope", "--param", "0.5", "--seed", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.toml");
    std::fs::write(&p, &out.stdout).unwrap();
    let spec = load_spec(&p).unwrap();
    let g = spec.build().unwrap();
    assert!(g.certificates.iter().all(|c| c.min_slack >= -1e-8));
}

/// Emitting a spec and loading it again gives the same space.
#[test]
fn spec_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(fixture("spaces")).unwrap() {
        let p = entry.unwrap().path();
        let spec = load_spec(&p).unwrap();
        let q = dir.path().join("again.toml");
        std::fs::write(&q, spec_to_toml(&spec)).unwrap();
        let again: SpaceSpec = load_spec(&q).unwrap();
        assert_eq!(spec, again);
        let (a, b) = (spec.build().unwrap().space, again.build().unwrap().space);
        let top = a.interior_limit();
        for i in 1..20 {
            let r = top * i as f64 / 20.0;
            for &c in a.check_nodes() {
                let (x, y) = (
                    a.mean_curvature_f(r, c).unwrap(),
                    b.mean_curvature_f(r, c).unwrap(),
                );
                assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
                let (x, y) = (a.ric_f_radial(r, c).unwrap(), b.ric_f_radial(r, c).unwrap());
                assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
            }
            let (x, y) = (a.vol_f(0.0, r).unwrap(), b.vol_f(0.0, r).unwrap());
            assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for (space, suite) in [
        ("generated_bounded", "bounded"),
        ("euclidean_linear_f", "rigidity"),
    ] {
        for fmt in ["csv", "json"] {
            let a = check(space, suite, &["--format", fmt]);
            let b = check(space, suite, &["--format", fmt]);
            assert!(!a.stdout.is_empty());
            assert_eq!(a.stdout, b.stdout);
        }
    }
}

#[test]
fn oracle_and_builtins_subcommands() {
    let out = ricf(&["oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!String::from_utf8(out.stdout).unwrap().contains("FAIL"));
    let out = ricf(&["list-builtins"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 6);
}
