use std::collections::BTreeMap;
use std::f64::consts::PI;

use ricf_core::space::{generate_space, GeneratorConfig, GeneratorMode};
use ricf_core::theorems::*;
use ricf_core::{builtin, RotSymSpace};

fn space(name: &str, n: usize, kv: &[(&str, f64)]) -> RotSymSpace {
    let p: BTreeMap<String, f64> = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    builtin(name, n, &p).unwrap()
}

#[test]
fn myers_margins_match_arithmetic() {
    let golden = [
        (3, 0.1, 0.286809070480120),
        (3, 0.5, 1.640706613257894),
        (4, 0.1, 0.189319029598110),
        (4, 0.5, 1.030146415477714),
    ];
    for (n, eps, margin) in golden {
        let s = space("sphere_perturbed", n, &[("eps", eps)]);
        let h = 1.0 - eps / (n as f64 - 1.0);
        let rep = check_myers(&s, h, eps, &CheckOptions::default()).unwrap();
        assert!(rep.pass(), "{:?}", rep.notes);
        assert!(
            (rep.min_margin - margin).abs() < 1e-10,
            "n = {n}, eps = {eps}"
        );
    }
    for n in [3, 4] {
        let s = space("sphere_perturbed", n, &[("eps", 0.0)]);
        let rep = check_myers(&s, 1.0, 0.0, &CheckOptions::default()).unwrap();
        assert!(rep.min_margin.abs() < 1e-12);
    }
}

#[test]
fn linear_weight_equality_is_rigid() {
    let s = space("euclidean_linear_f", 3, &[("a", 0.7)]);
    let rep = check_mc_a(&s, 0.0, 0.7, &CheckOptions::default()).unwrap();
    assert!(rep.samples.iter().all(|x| x.margin.abs() < 1e-10));
    assert_eq!(rep.equality_points.len(), rep.samples.len());
    let v = &rep.rigidity[0];
    assert!(v.confirmed && v.warp_deviation < 1e-12 && (v.weight_deviation) < 1e-12);
}

#[test]
fn unbounded_weights_show_necessity() {
    let lin = space("euclidean_linear", 3, &[]);
    let rep = check_vol_b(&lin, 0.0, 0.5, &CheckOptions::default().falsifying()).unwrap();
    assert!(!rep.precondition_ok);
    let r = rep.metric("first_violation_radius").unwrap();
    assert!(r.is_finite() && r < lin.r_max());

    let soliton = space("gaussian_soliton", 3, &[]);
    for k in [1.0, 10.0, 100.0] {
        let rep = check_vol_b(&soliton, 0.0, k, &CheckOptions::default()).unwrap();
        assert!(!rep.precondition_ok, "k = {k}");
    }
    assert!(check_vol_a(&soliton, 0.0, 0.0, &CheckOptions::default())
        .unwrap()
        .pass());
}

#[test]
fn flz_dominance_and_riccati_ratio() {
    for seed in 0..10 {
        let g = generate_space(&GeneratorConfig::new(
            3,
            0.0,
            GeneratorMode::FBounded { k: 0.2 },
            seed,
        ))
        .unwrap();
        let rep = check_mc_b(&g.space, 0.0, 0.2, &CheckOptions::default()).unwrap();
        assert!(rep.pass());
        assert!(rep.branch_min("flz_dominance").unwrap() >= -1e-12);
        let app = check_mc_app_b(&g.space, 0.0, 0.2, &CheckOptions::default()).unwrap();
        assert!(app.pass());
        assert_eq!(app.metric("main_tighter_everywhere"), Some(1.0));
        let ratio = app.metric("riccati_to_main_ratio").unwrap();
        assert!((ratio - 8.0 * 0.4f64.exp() / 2.8).abs() < 1e-12 && ratio > 1.0);
    }
}

#[test]
fn perturbed_sphere_hypersurfaces() {
    let s = space("sphere_perturbed", 3, &[("eps", 0.2)]);
    let rep = hypersurface_distance_check(&s, 0.9, 1.0, 2.0, &CheckOptions::default()).unwrap();
    assert!(rep.pass());
    let mf = |r: f64| 2.0 / r.tan() + 0.2 * r.sin();
    let expect = (mf(1.0).abs() + mf(2.0).abs()) / (2.0 * 0.9) - 1.0;
    assert!((rep.min_margin - expect).abs() < 1e-12);
    let same = hypersurface_distance_check(&s, 0.9, 1.3, 1.3, &CheckOptions::default()).unwrap();
    assert!(same.pass());
}

#[test]
fn excess_golden_value() {
    let e = 2.0 * 5f64.sqrt() - 4.0;
    let bound = excess_bound(3, 0.0, 5f64.sqrt(), 5f64.sqrt(), 1.0).unwrap();
    assert_eq!(format!("{e:.4}"), "0.4721");
    assert_eq!(format!("{bound:.3}"), "4.154");
    for n in 3..=5 {
        for d in [2.0, 4.0, 8.0] {
            let rep =
                euclidean_excess_check(n, d, &excess_heights(d, 20), &CheckOptions::default())
                    .unwrap();
            assert!(rep.pass() && rep.min_margin >= 0.0);
        }
    }
}

#[test]
fn soliton_mean_curvature_decay() {
    let s = space("gaussian_soliton", 2, &[]);
    let rep = check_mc_basic(&s, 1.0, 1.0, &CheckOptions::default()).unwrap();
    assert!(rep.pass());
    let flat = space("constant_curvature", 2, &[]);
    let rep = check_mc_basic(&flat, 0.0, 1.0, &CheckOptions::default()).unwrap();
    assert!(rep.pass());
    assert!(rep.rigidity.is_empty());
    let lin = space("euclidean_linear", 3, &[("r_max", 100.0)]);
    let rep = check_vol_basic(&lin, 0.1, 1.0, &CheckOptions::default().falsifying()).unwrap();
    assert!(!rep.violations.is_empty());
}

#[test]
fn generated_spaces_grow_linearly() {
    let mut found = 0;
    for seed in 0..200 {
        let mut cfg = GeneratorConfig::new(3, 0.0, GeneratorMode::FBounded { k: 0.3 }, seed);
        cfg.r_cap = Some(45.0);
        cfg.slack_scale = 0.002;
        let g = generate_space(&cfg).unwrap();
        if g.space.r_max() < 40.0 {
            continue;
        }
        let rep = check_linear_growth(
            &g.space,
            GrowthMode::Bounded { k: 0.3 },
            &CheckOptions::default(),
        )
        .unwrap();
        assert!(rep.pass(), "seed {seed}: {:?}", rep.notes);
        assert!(rep.metric("growth_slope").unwrap() > 0.0);
        found += 1;
        if found == 10 {
            break;
        }
    }
    assert_eq!(found, 10);
}

#[test]
fn classical_reduction_reports() {
    for &h in &[-1.0, 0.0, 1.0] {
        for n in 2..=6 {
            let s = space("constant_curvature", n, &[("H", h)]);
            let opts = CheckOptions::default().with_grid(64);
            let a = check_mc_a(&s, h, 0.0, &opts).unwrap();
            assert!(a.pass() && a.min_margin.abs() < 1e-9);
            let v = check_vol_a(&s, h, 0.0, &opts).unwrap();
            assert!(v.pass());
            let worst = v
                .samples
                .iter()
                .filter(|x| x.branch != "density")
                .map(|x| (x.margin / x.rhs).abs())
                .fold(0.0, f64::max);
            assert!(worst < 1e-9, "H = {h}, n = {n}: {worst:e}");
        }
    }
    assert!((PI - space("constant_curvature", 3, &[("H", 1.0)]).r_max()).abs() < 1e-15);
}
