//! Diameter, excess and hypersurface distance estimates.

use super::{CheckOptions, CheckReport, ReportBuilder, TheoremId};
use crate::error::{domain, Error, Result};
use crate::space::{BoundKind, RotSymSpace};

/// r_max ≤ π/√H + 4k/((n−1)√H) on a closed space with Ric_f ≥ (n−1)H > 0, |f| ≤ k.
pub fn check_myers(
    space: &RotSymSpace,
    h: f64,
    k: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    if !(h > 0.0) {
        return Err(domain("diameter bound needs H > 0", h));
    }
    let n = space.n() as f64;
    let mut b = ReportBuilder::new(TheoremId::Myers, space.label(), opts);
    b.metric("H", h);
    b.metric("k", k);
    if !b.precondition(
        space.pole_closed(),
        "space is not closed; no diameter to bound",
    ) {
        return Ok(b.finish());
    }
    if !b.certify(space, h, &[BoundKind::RicF, BoundKind::FBound { k }], None)? {
        return Ok(b.finish());
    }
    let sh = h.sqrt();
    let bound = std::f64::consts::PI / sh + 4.0 * k / ((n - 1.0) * sh);
    let diam = space.r_max();
    b.metric("diameter", diam);
    b.metric("bound", bound);
    b.point("main", diam, None, diam, bound);
    Ok(b.finish())
}

fn excess_inputs(n: usize, k: f64, dpx: f64, dqx: f64, h: f64) -> Result<f64> {
    let m = n as f64 + 4.0 * k;
    if !(m > 2.0) {
        return Err(domain("excess estimate needs n + 4k > 2", m));
    }
    if !(h >= 0.0) {
        return Err(domain("excess estimate needs h >= 0", h));
    }
    if !(h < dpx.min(dqx)) {
        return Err(domain("excess estimate needs h < min(d(p,x), d(q,x))", h));
    }
    Ok(m)
}

/// C = 2((m−1)/m)(1/(d(p,x) − h) + 1/(d(q,x) − h)), m = n + 4k.
pub fn excess_constant(n: usize, k: f64, dpx: f64, dqx: f64, h: f64) -> Result<f64> {
    let m = excess_inputs(n, k, dpx, dqx, h)?;
    Ok(2.0 * ((m - 1.0) / m) * (1.0 / (dpx - h) + 1.0 / (dqx - h)))
}

/// 2((m−1)/(m−2))(C h^m / 2)^{1/(m−1)}.
pub fn excess_bound(n: usize, k: f64, dpx: f64, dqx: f64, h: f64) -> Result<f64> {
    let m = excess_inputs(n, k, dpx, dqx, h)?;
    let c = excess_constant(n, k, dpx, dqx, h)?;
    Ok(2.0 * ((m - 1.0) / (m - 2.0)) * (0.5 * c * h.powf(m)).powf(1.0 / (m - 1.0)))
}

/// `count` heights evenly spaced in (0, 0.9·d/2].
pub fn excess_heights(d: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| 0.45 * d * i as f64 / count as f64)
        .collect()
}

/// Flat ℝⁿ with p, q = (∓d/2, 0, …) and x = (0, h, 0, …): the excess
/// 2√(d²/4 + h²) − d against the estimate with k = 0.
pub fn euclidean_excess_check(
    n: usize,
    d: f64,
    heights: &[f64],
    opts: &CheckOptions,
) -> Result<CheckReport> {
    if !(d > 0.0) {
        return Err(domain("excess check needs d > 0", d));
    }
    if heights.is_empty() {
        return Err(Error::InvalidInput("no heights given".into()));
    }
    let mut b = ReportBuilder::new(TheoremId::Excess, &format!("euclidean(n={n},d={d})"), opts);
    b.metric("d", d);
    for &h in heights {
        let dist = (0.25 * d * d + h * h).sqrt();
        let e = 2.0 * dist - d;
        let bound = excess_bound(n, 0.0, dist, dist, h)?;
        b.point("main", h, None, e, bound);
    }
    Ok(b.finish())
}

/// d(S(r1), S(r2)) ≤ (max|m_f(r1)| + max|m_f(r2)|)/((n−1)H) for geodesic
/// spheres of a closed space with Ric_f ≥ (n−1)H > 0.
pub fn hypersurface_distance_check(
    space: &RotSymSpace,
    h: f64,
    r1: f64,
    r2: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    if !(h > 0.0) {
        return Err(domain("hypersurface estimate needs H > 0", h));
    }
    if !(r1 > 0.0 && r1 <= r2 && r2 < space.r_max()) {
        return Err(Error::InvalidInput(format!(
            "need 0 < r1 <= r2 < r_max, got r1 = {r1}, r2 = {r2}"
        )));
    }
    let n = space.n() as f64;
    let mut b = ReportBuilder::new(TheoremId::Hypersurface, space.label(), opts);
    b.metric("H", h);
    if !b.precondition(space.pole_closed(), "space is not closed") {
        return Ok(b.finish());
    }
    if !b.certify(space, h, &[BoundKind::RicF], None)? {
        return Ok(b.finish());
    }
    let max_abs = |r: f64| -> Result<f64> {
        let mut best: f64 = 0.0;
        for &c in space.check_nodes() {
            best = best.max(space.mean_curvature_f(r, c)?.abs());
        }
        Ok(best)
    };
    let m1 = max_abs(r1)?;
    let m2 = max_abs(r2)?;
    let rhs = (m1 + m2) / ((n - 1.0) * h);
    b.metric("mean_curvature_r1", m1);
    b.metric("mean_curvature_r2", m2);
    b.metric("halved_denominator_margin", 0.5 * rhs - (r2 - r1));
    b.point("main", r1, None, r2 - r1, rhs);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::builtin;
    use std::collections::BTreeMap;

    #[test]
    fn excess_golden() {
        let dist = 5f64.sqrt();
        let c = excess_constant(3, 0.0, dist, dist, 1.0).unwrap();
        let bound = excess_bound(3, 0.0, dist, dist, 1.0).unwrap();
        assert!((c - 2.1573786516665265).abs() < 1e-14);
        assert!((bound - 4.154398778804487).abs() < 1e-13);
        assert!(excess_bound(3, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(excess_bound(2, 0.0, 2.0, 2.0, 1.0).is_err());
        assert_eq!(excess_bound(3, 0.0, 2.0, 2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn excess_grid_holds() {
        for n in 3..=5 {
            for &d in &[2.0, 4.0, 8.0] {
                let rep =
                    euclidean_excess_check(n, d, &excess_heights(d, 20), &CheckOptions::default())
                        .unwrap();
                assert!(rep.pass());
                assert_eq!(rep.samples.len(), 20);
            }
        }
    }

    #[test]
    fn round_sphere_myers_equality() {
        let p: BTreeMap<String, f64> = [("eps".to_string(), 0.0)].into_iter().collect();
        let s = builtin("sphere_perturbed", 3, &p).unwrap();
        let rep = check_myers(&s, 1.0, 0.0, &CheckOptions::default()).unwrap();
        assert!(rep.pass());
        assert!(rep.min_margin.abs() < 1e-12);
    }

    #[test]
    fn round_sphere_hypersurfaces() {
        let p: BTreeMap<String, f64> = [("H".to_string(), 1.0)].into_iter().collect();
        let s = builtin("constant_curvature", 3, &p).unwrap();
        for &t in &[0.05, 0.3, 0.7, 1.2] {
            let half = std::f64::consts::FRAC_PI_2;
            let rep =
                hypersurface_distance_check(&s, 1.0, half - t, half + t, &CheckOptions::default())
                    .unwrap();
            assert!(rep.pass());
            let expect = 2.0 * f64::tan(t) - 2.0 * t;
            assert!((rep.min_margin - expect).abs() < 1e-12);
            if t < 1.1 {
                assert!(rep.metric("halved_denominator_margin").unwrap() < 0.0);
            }
        }
    }
}
