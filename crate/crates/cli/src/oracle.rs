//! Cross-checks of the numerical kernels against closed forms and against
//! independent textbook methods (fixed-step RK4, composite Simpson).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use ricf_core::numerics::{solve_jacobi, sphere_average, JacobiOptions};
use ricf_core::theorems::{check_myers, excess_bound, CheckOptions};
use ricf_core::{builtin, sn, Profile, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub name: &'static str,
    pub computed: f64,
    pub reference: f64,
    /// |computed − reference|, relative when `relative` is set.
    pub error: f64,
    pub tolerance: f64,
    pub relative: bool,
    pub pass: bool,
}

fn compare(
    name: &'static str,
    computed: f64,
    reference: f64,
    tolerance: f64,
    relative: bool,
) -> OracleResult {
    let mut error = (computed - reference).abs();
    if relative {
        error /= reference.abs();
    }
    OracleResult {
        name,
        computed,
        reference,
        error,
        tolerance,
        relative,
        pass: error <= tolerance,
    }
}

/// Fixed-step RK4 for φ'' = −k(r)φ from φ(0) = 0, φ'(0) = 1.
pub fn rk4_jacobi(k: impl Fn(f64) -> f64, r_end: f64, steps: usize) -> (f64, f64) {
    let h = r_end / steps as f64;
    let f = |r: f64, y: f64, v: f64| (v, -k(r) * y);
    let (mut y, mut v) = (0.0, 1.0);
    for i in 0..steps {
        let r = i as f64 * h;
        let (a1, b1) = f(r, y, v);
        let (a2, b2) = f(r + 0.5 * h, y + 0.5 * h * a1, v + 0.5 * h * b1);
        let (a3, b3) = f(r + 0.5 * h, y + 0.5 * h * a2, v + 0.5 * h * b2);
        let (a4, b4) = f(r + h, y + h * a3, v + h * b3);
        y += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        v += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    }
    (y, v)
}

/// Composite Simpson with an even number of panels.
pub fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = g(a) + g(b);
    for i in 1..panels {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Largest |φ − sn_H| (scaled) over H ∈ {−1, 0, 1}.
pub fn jacobi_vs_model() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &h in &[-1.0f64, 0.0, 1.0] {
        let r_end = if h > 0.0 { 0.99 * PI } else { 5.0 };
        let sol = solve_jacobi(move |_| h, r_end, &JacobiOptions::default())?;
        for i in 1..=50 {
            let r = r_end * i as f64 / 50.0;
            let e = sn(h, r);
            let got = sol.jet(r);
            worst = worst.max((got.value - e.value).abs() / e.value.abs().max(1.0));
        }
    }
    Ok(worst)
}

/// Largest |φ_adaptive − φ_RK4| on φ'' = −rφ.
pub fn jacobi_vs_rk4() -> Result<f64> {
    let sol = solve_jacobi(|r| r, 4.0, &JacobiOptions::default())?;
    let mut worst: f64 = 0.0;
    for i in 1..=8 {
        let r = 0.5 * i as f64;
        let (y, v) = rk4_jacobi(|r| r, r, 20_000);
        let j = sol.jet(r);
        worst = worst.max((j.value - y).abs()).max((j.d1 - v).abs());
    }
    Ok(worst)
}

/// Largest error of the direction rule on monomials of degree ≤ 10.
pub fn sphere_exactness() -> f64 {
    let mut worst: f64 = 0.0;
    for n in 2..=7 {
        let area = sphere_average(|_| 1.0, n);
        for deg in 1..=10u32 {
            let got = sphere_average(|c| c.powi(deg as i32), n) / area;
            let expect: f64 = if deg % 2 == 1 {
                0.0
            } else {
                (0..deg / 2)
                    .map(|j| (2 * j + 1) as f64 / (n as f64 + 2.0 * j as f64))
                    .product()
            };
            worst = worst.max((got - expect).abs());
        }
    }
    worst
}

pub fn run_oracles() -> Result<Vec<OracleResult>> {
    let none = BTreeMap::new();
    let mut out = vec![
        compare("jacobi_vs_sn", jacobi_vs_model()?, 0.0, 1e-8, false),
        compare("jacobi_vs_rk4_airy", jacobi_vs_rk4()?, 0.0, 1e-8, false),
    ];
    let airy = solve_jacobi(|r| r, 3.0, &JacobiOptions::default())?;
    out.push(compare(
        "airy_first_zero",
        airy.first_zero().unwrap_or(f64::NAN),
        2.666352690406938,
        1e-8,
        false,
    ));
    out.push(compare(
        "sphere_degree_10",
        sphere_exactness(),
        0.0,
        1e-12,
        false,
    ));

    let r12: BTreeMap<String, f64> = [("r_max".to_string(), 12.0)].into_iter().collect();
    let s2 = builtin("gaussian_soliton", 2, &r12)?;
    out.push(compare(
        "gaussian_volume_2d",
        s2.vol_f(0.0, 12.0)?,
        2.0 * PI,
        1e-8,
        true,
    ));
    let simpson2 = simpson(|r| 2.0 * PI * r * (-0.5 * r * r).exp(), 0.0, 12.0, 20_000);
    out.push(compare(
        "gaussian_volume_2d_simpson",
        s2.vol_f(0.0, 12.0)?,
        simpson2,
        1e-10,
        true,
    ));
    let s3 = builtin("gaussian_soliton", 3, &none)?;
    out.push(compare(
        "gaussian_volume_3d",
        s3.vol_f(0.0, 20.0)?,
        (2.0 * PI).powf(1.5),
        1e-6,
        true,
    ));

    let lin = builtin("euclidean_linear", 2, &none)?;
    out.push(compare(
        "bessel_sphere_density",
        lin.sphere_density_f(1.0),
        7.954926521012845,
        1e-12,
        true,
    ));

    let d = 5f64.sqrt();
    out.push(compare(
        "excess_true",
        2.0 * d - 4.0,
        0.4721359549995794,
        1e-15,
        false,
    ));
    out.push(compare(
        "excess_bound",
        excess_bound(3, 0.0, d, d, 1.0)?,
        4.154398778804487,
        1e-12,
        false,
    ));

    let eps: BTreeMap<String, f64> = [("eps".to_string(), 0.5)].into_iter().collect();
    let sp = builtin("sphere_perturbed", 3, &eps)?;
    let myers = check_myers(&sp, 0.75, 0.5, &CheckOptions::default())?;
    let closed = PI / 0.75f64.sqrt() + 2.0 / (2.0 * 0.75f64.sqrt()) - PI;
    out.push(compare(
        "myers_margin",
        myers.min_margin,
        closed,
        1e-10,
        false,
    ));
    Ok(out)
}
