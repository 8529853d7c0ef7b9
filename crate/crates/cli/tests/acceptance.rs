//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use ricf_cli::oracle;
use ricf_core::space::{generate_space, GeneratorConfig, GeneratorMode};
use ricf_core::theorems::*;
use ricf_core::{
    builtin, mean_curvature_model, verify_bound, vol_model, BoundKind, ModelParams, Result,
    RotSymSpace,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn space(name: &str, n: usize, kv: &[(&str, f64)]) -> Result<RotSymSpace> {
    let p: BTreeMap<String, f64> = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    builtin(name, n, &p)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// f ≡ 0 and φ = sn_H reproduce the model quantities.
fn classical_reduction() -> Result<Outcome> {
    let t0 = Instant::now();
    let opts = CheckOptions::default().with_grid(64);
    let (mut worst_m, mut worst_v) = (0.0f64, 0.0f64);
    let mut all_pass = true;
    for &h in &[-1.0, 0.0, 1.0] {
        for n in 2..=6 {
            let s = space("constant_curvature", n, &[("H", h)])?;
            let model = ModelParams::new(n, h)?;
            let top = s.interior_limit();
            let radii: Vec<f64> = (1..=64).map(|i| top * i as f64 / 64.0).collect();
            for &r in &radii {
                let m = s.mean_curvature_f(r, 0.0)?;
                worst_m =
                    worst_m.max((m - mean_curvature_model(&model, r)?).abs() / m.abs().max(1.0));
            }
            for (i, &r) in radii.iter().enumerate().step_by(4) {
                for &big in &radii[i + 1..] {
                    let got = s.vol_f(0.0, big)? / s.vol_f(0.0, r)?;
                    let want = vol_model(&model, 0.0, big)? / vol_model(&model, 0.0, r)?;
                    worst_v = worst_v.max(rel(got, want));
                }
            }
            all_pass &=
                check_mc_a(&s, h, 0.0, &opts)?.pass() && check_vol_a(&s, h, 0.0, &opts)?.pass();
        }
    }
    let dt = t0.elapsed();
    outcome(
        all_pass && worst_m < 1e-9 && worst_v < 1e-9 && dt < Duration::from_secs(5),
        format!(
            "mean curvature err {worst_m:.1e}, volume ratio rel err {worst_v:.1e}, {:.2} s",
            dt.as_secs_f64()
        ),
    )
}

/// Generated spaces satisfy every applicable comparison.
fn generator_sweep() -> Result<Outcome> {
    let t0 = Instant::now();
    let opts = CheckOptions::default().with_grid(64);
    let modes = [
        GeneratorMode::FBounded { k: 0.2 },
        GeneratorMode::FSlope { a: 0.5 },
        GeneratorMode::NTensor { n_param: 2.0 },
    ];
    let (mut count, mut failures, mut worst) = (0usize, 0usize, f64::INFINITY);
    for n in [3usize, 4] {
        for h in [-1.0, 0.0, 1.0] {
            for mode in modes {
                for seed in 0..100 {
                    let g = generate_space(&GeneratorConfig::new(n, h, mode, seed))?;
                    let s = &g.space;
                    let mut reps = Vec::new();
                    match mode {
                        GeneratorMode::FBounded { k } => {
                            reps.push(check_mc_b(s, h, k, &opts)?);
                            reps.push(check_mc_app_b(s, h, k, &opts)?);
                            reps.push(check_vol_b(s, h, k, &opts)?);
                        }
                        GeneratorMode::FSlope { a } => {
                            reps.push(check_mc_a(s, h, a, &opts)?);
                            reps.push(check_vol_a(s, h, a, &opts)?);
                        }
                        GeneratorMode::NTensor { n_param } => {
                            reps.push(check_mc_n(s, h, n_param, &opts)?)
                        }
                    }
                    if !matches!(mode, GeneratorMode::NTensor { .. }) {
                        let lambda = (n as f64 - 1.0) * h;
                        let r0 = 0.25 * s.interior_limit();
                        reps.push(check_mc_basic(s, lambda, r0, &opts)?);
                        reps.push(check_vol_basic(s, lambda, r0, &opts)?);
                    }
                    for r in reps {
                        count += 1;
                        worst = worst.min(r.min_margin);
                        if !r.pass() || r.min_margin < -1e-7 {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    let dt = t0.elapsed();
    outcome(
        failures == 0 && dt < Duration::from_secs(60),
        format!(
            "{count} reports, {failures} failing, worst margin {worst:.2e}, {:.1} s",
            dt.as_secs_f64()
        ),
    )
}

fn rigidity_golden() -> Result<Outcome> {
    let s = space("euclidean_linear_f", 3, &[("a", 0.7)])?;
    let rep = check_mc_a(&s, 0.0, 0.7, &CheckOptions::default())?;
    let worst = rep
        .samples
        .iter()
        .map(|x| x.margin.abs())
        .fold(0.0, f64::max);
    let gap = rep
        .samples
        .iter()
        .map(|x| (x.lhs - 0.7).abs())
        .fold(0.0, f64::max);
    let v = rep.rigidity.first();
    let confirmed =
        v.is_some_and(|v| v.confirmed && v.warp_deviation < 1e-10 && v.weight_deviation < 1e-10);
    outcome(
        rep.pass() && worst < 1e-10 && gap < 1e-10 && confirmed,
        format!("max |margin| {worst:.1e}, max |m_f - m_H - a| {gap:.1e}, rigidity confirmed {confirmed}"),
    )
}

fn soliton_volumes() -> Result<Outcome> {
    let s2 = space("gaussian_soliton", 2, &[("lambda", 1.0), ("r_max", 12.0)])?;
    let e2 = rel(s2.vol_f(0.0, 12.0)?, 2.0 * PI);
    let s3 = space("gaussian_soliton", 3, &[("lambda", 1.0)])?;
    let e3 = rel(s3.vol_f(0.0, s3.r_max())?, (2.0 * PI).powf(1.5));
    outcome(
        e2 < 1e-8 && e3 < 1e-6,
        format!("2-d rel err {e2:.1e}, 3-d rel err {e3:.1e}"),
    )
}

fn necessity() -> Result<Outcome> {
    let lin = space("euclidean_linear", 3, &[])?;
    let rep = check_vol_b(&lin, 0.0, 0.5, &CheckOptions::default().falsifying())?;
    let radius = rep.metric("first_violation_radius").unwrap_or(f64::NAN);
    let lin_ok = !rep.precondition_ok
        && !rep.violations.is_empty()
        && radius.is_finite()
        && radius < lin.r_max();

    // f = r^2/2 exceeds k beyond sqrt(2k); truncate past that radius.
    let mut cert_fails = true;
    for k in [1.0f64, 10.0, 100.0, 1e3, 1e4] {
        let s = space("gaussian_soliton", 3, &[("r_max", 2.0 * (2.0 * k).sqrt())])?;
        let c = verify_bound(&s, 0.0, BoundKind::FBound { k }, None, 512)?;
        cert_fails &= c.min_slack < 0.0;
    }
    let soliton = space("gaussian_soliton", 3, &[])?;
    let vol_a = check_vol_a(&soliton, 0.0, 0.0, &CheckOptions::default())?;
    outcome(
        lin_ok && cert_fails && vol_a.pass() && vol_a.precondition_ok,
        format!(
            "first violation at r = {radius:.4}, soliton |f| <= k refuted for k up to 1e4: {cert_fails}, vol_a(a=0) pass: {}",
            vol_a.pass()
        ),
    )
}

fn myers() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut all = true;
    for n in [3usize, 4] {
        for eps in [0.0, 0.1, 0.5] {
            let s = space("sphere_perturbed", n, &[("eps", eps)])?;
            let h = 1.0 - eps / (n as f64 - 1.0);
            let rep = check_myers(&s, h, eps, &CheckOptions::default())?;
            let closed = PI / h.sqrt() + 4.0 * eps / ((n as f64 - 1.0) * h.sqrt()) - PI;
            worst = worst.max((rep.min_margin - closed).abs());
            all &= rep.pass();
        }
    }
    outcome(
        all && worst < 1e-10,
        format!("6 cases, max margin deviation {worst:.1e}"),
    )
}

fn excess() -> Result<Outcome> {
    let mut points = 0;
    let mut all = true;
    for n in 3..=5 {
        for d in [2.0, 4.0, 8.0] {
            let rep =
                euclidean_excess_check(n, d, &excess_heights(d, 20), &CheckOptions::default())?;
            points += rep.samples.len();
            all &= rep.pass() && rep.samples.iter().all(|x| x.lhs <= x.rhs);
        }
    }
    let e = 2.0 * 5f64.sqrt() - 4.0;
    let b = excess_bound(3, 0.0, 5f64.sqrt(), 5f64.sqrt(), 1.0)?;
    let golden = format!("{e:.4}") == "0.4721" && format!("{b:.3}") == "4.154";
    outcome(
        all && points == 180 && golden,
        format!("{points} points, golden {e:.4} <= {b:.3}"),
    )
}

fn flz_dominance() -> Result<Outcome> {
    let opts = CheckOptions::default().with_grid(64);
    let mut runs = 0;
    let mut ok = true;
    let mut worst = f64::INFINITY;
    for n in [3usize, 4] {
        for k in [0.05, 0.2, 0.5] {
            for seed in 0..20 {
                let g = generate_space(&GeneratorConfig::new(
                    n,
                    0.0,
                    GeneratorMode::FBounded { k },
                    seed,
                ))?;
                let mc = check_mc_b(&g.space, 0.0, k, &opts)?;
                let dom = mc.branch_min("flz_dominance").unwrap_or(f64::NEG_INFINITY);
                worst = worst.min(dom);
                let app = check_mc_app_b(&g.space, 0.0, k, &opts)?;
                let m = n as f64 - 1.0;
                let ratio = 4.0 * m * (4.0 * k / m).exp() / (m + 4.0 * k);
                let got = app.metric("riccati_to_main_ratio").unwrap_or(f64::NAN);
                ok &= mc.pass()
                    && dom >= -1e-12
                    && app.pass()
                    && app.metric("main_tighter_everywhere") == Some(1.0)
                    && got >= ratio * (1.0 - 1e-12)
                    && got > 1.0;
                runs += 1;
            }
        }
    }
    outcome(ok, format!("{runs} runs, min dominance margin {worst:.2e}"))
}

fn kernel_oracles() -> Result<Outcome> {
    let sn = oracle::jacobi_vs_model()?;
    let rk4 = oracle::jacobi_vs_rk4()?;
    let sphere = oracle::sphere_exactness();
    outcome(
        sn < 1e-8 && rk4 < 1e-8 && sphere < 1e-12,
        format!("sn {sn:.1e}, rk4 {rk4:.1e}, sphere rule {sphere:.1e}"),
    )
}

fn determinism(started: Instant) -> Result<Outcome> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let cases = [
        ("generated_bounded", "bounded"),
        ("euclidean_linear", "necessity"),
        ("sphere_perturbed", "myers"),
    ];
    let mut identical = true;
    for (sp, su) in cases {
        for fmt in ["csv", "json"] {
            let run = || {
                Command::new(env!("CARGO_BIN_EXE_ricf"))
                    .args(["check", "--format", fmt, "--space"])
                    .arg(fixtures.join(format!("spaces/{sp}.toml")))
                    .arg("--suite")
                    .arg(fixtures.join(format!("suites/{su}.toml")))
                    .output()
                    .expect("ricf binary runs")
            };
            let (a, b) = (run(), run());
            identical &=
                !a.stdout.is_empty() && a.stdout == b.stdout && a.status.code() == b.status.code();
        }
    }
    let dt = started.elapsed();
    outcome(
        identical && dt < Duration::from_secs(180),
        format!(
            "byte-identical repeat runs {identical}, battery {:.1} s",
            dt.as_secs_f64()
        ),
    )
}

fn main() {
    let started = Instant::now();
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("classical reduction", classical_reduction),
        ("generator soundness sweep", generator_sweep),
        ("rigidity golden case", rigidity_golden),
        ("gaussian soliton volumes", soliton_volumes),
        ("necessity falsifications", necessity),
        ("myers diameter", myers),
        ("euclidean excess grid", excess),
        ("flz dominance", flz_dominance),
        ("kernel oracles", kernel_oracles),
    ];
    let mut failed = 0;
    let mut report = |i: usize, name: &str, r: Result<Outcome>| {
        let (pass, detail) = match r {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "AC{i:<2} {} {name}: {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
    };
    for (i, (name, f)) in criteria.iter().enumerate() {
        report(i + 1, name, f());
    }
    report(10, "determinism", determinism(started));
    if failed > 0 {
        std::process::exit(1);
    }
}
