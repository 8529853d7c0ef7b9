//! Mean curvature comparisons.

use super::rigidity::{verdict, RigidityMode};
use super::{
    capped_upper, h_threshold, BoundComparison, CheckOptions, CheckReport, ReportBuilder, TheoremId,
};
use crate::error::{domain, Error, Result};
use crate::model::sn;
use crate::numerics::{integrate, Tolerance};
use crate::space::{BoundKind, RotSymSpace};

/// (n_eff − 1)·sn_H'/sn_H without domain checks.
pub(crate) fn model_mc(n_eff: f64, h: f64, r: f64) -> f64 {
    let j = sn(h, r);
    (n_eff - 1.0) * j.d1 / j.value
}

/// m_f(r) ≤ m_f(r0) − λ(r − r0) for r ≥ r0 under Ric_f ≥ λ.
pub fn check_mc_basic(
    space: &RotSymSpace,
    lambda: f64,
    r0: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let n = space.n() as f64;
    let h = lambda / (n - 1.0);
    let upper = capped_upper(space, None);
    if !(r0 > 0.0 && r0 < upper) {
        return Err(Error::InvalidInput(format!(
            "r0 = {r0} must lie in (0, {upper})"
        )));
    }
    let mut b = ReportBuilder::new(TheoremId::McBasic, space.label(), opts);
    b.metric("lambda", lambda);
    b.metric("r0", r0);
    if !b.certify(space, h, &[BoundKind::RicF], Some(upper))? {
        return Ok(b.finish());
    }
    let grid = opts.grid(upper)?;
    b.grid(grid);
    let radii: Vec<f64> = grid.points().into_iter().filter(|&r| r > r0).collect();
    for &c in space.check_nodes() {
        let m0 = space.mean_curvature_f(r0, c)?;
        for &r in &radii {
            let lhs = space.mean_curvature_f(r, c)?;
            b.point("main", r, Some(c), lhs, m0 - lambda * (r - r0));
        }
    }
    for (c, lo, hi) in b.equality_runs("main") {
        let v = verdict(
            space,
            RigidityMode::FlatSplit { lambda },
            (lo, hi),
            c,
            opts,
            None,
        );
        b.rigidity(v);
    }
    Ok(b.finish())
}

/// m_f − m_H ≤ a under Ric_f ≥ (n−1)H and ∂_r f ≥ −a.
pub fn check_mc_a(space: &RotSymSpace, h: f64, a: f64, opts: &CheckOptions) -> Result<CheckReport> {
    let n = space.n() as f64;
    let upper = capped_upper(space, h_threshold(h, 2.0));
    let mut b = ReportBuilder::new(TheoremId::McA, space.label(), opts);
    b.metric("H", h);
    b.metric("a", a);
    if !b.certify(
        space,
        h,
        &[BoundKind::RicF, BoundKind::FSlope { a }],
        Some(upper),
    )? {
        return Ok(b.finish());
    }
    let grid = opts.grid(upper)?;
    b.grid(grid);
    for &c in space.check_nodes() {
        for r in grid.points() {
            let lhs = space.mean_curvature_f(r, c)? - model_mc(n, h, r);
            b.point("main", r, Some(c), lhs, a);
        }
    }
    for (c, lo, hi) in b.equality_runs("main") {
        let v = verdict(
            space,
            RigidityMode::ModelLinear { h, a },
            (lo, hi),
            c,
            opts,
            None,
        );
        b.rigidity(v);
    }
    Ok(b.finish())
}

/// ∫₀^r f(t, c) dt at each grid radius.
fn cumulative_f(space: &RotSymSpace, c: f64, radii: &[f64]) -> Result<Vec<f64>> {
    let tol = Tolerance::default().tightened(1e-2);
    let mut acc = 0.0;
    let mut prev = 0.0;
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        acc += integrate(|t| space.f_jet(t, c).value, prev, r, &tol)?;
        out.push(acc);
        prev = r;
    }
    Ok(out)
}

/// m_f ≤ m_H^{n+4k} (and its refinements) under Ric_f ≥ (n−1)H and |f| ≤ k.
pub fn check_mc_b(space: &RotSymSpace, h: f64, k: f64, opts: &CheckOptions) -> Result<CheckReport> {
    let n = space.n() as f64;
    let mut b = ReportBuilder::new(TheoremId::McB, space.label(), opts);
    b.metric("H", h);
    b.metric("k", k);
    let cert_cap = capped_upper(space, h_threshold(h, 2.0));
    if !b.certify(
        space,
        h,
        &[BoundKind::RicF, BoundKind::FBound { k }],
        Some(cert_cap),
    )? {
        return Ok(b.finish());
    }
    let upper = capped_upper(space, h_threshold(h, 4.0));
    let grid = opts.grid(upper)?;
    b.grid(grid);
    let radii = grid.points();
    let shifted = n + 4.0 * k;
    for &c in space.check_nodes() {
        for &r in &radii {
            let lhs = space.mean_curvature_f(r, c)?;
            b.point(
                "shifted_dimension",
                r,
                Some(c),
                lhs,
                model_mc(shifted, h, r),
            );
        }
    }
    if let (Some(lo), Some(hi)) = (h_threshold(h, 4.0), h_threshold(h, 2.0)) {
        let hi = capped_upper(space, Some(hi));
        if hi > lo {
            let count = opts.grid_count;
            let sh = h.sqrt();
            for &c in space.check_nodes() {
                for i in 0..count {
                    let r = lo + (hi - lo) * i as f64 / (count - 1) as f64;
                    let lhs = space.mean_curvature_f(r, c)?;
                    let factor = 1.0 + 4.0 * k / ((n - 1.0) * (2.0 * sh * r).sin());
                    b.point("upper_range", r, Some(c), lhs, factor * model_mc(n, h, r));
                }
            }
        } else {
            b.note("space ends before the upper range; branch skipped");
        }
    }
    if h == 0.0 {
        for &c in space.check_nodes() {
            let integrals = cumulative_f(space, c, &radii)?;
            for (&r, &int_f) in radii.iter().zip(&integrals) {
                let f = space.f_jet(r, c).value;
                let flz = (n - 1.0) / r - 2.0 * f / r + 2.0 * int_f / (r * r);
                let lhs = space.mean_curvature_f(r, c)?;
                b.point("flz", r, Some(c), lhs, flz);
                b.point("flz_dominance", r, Some(c), flz, (shifted - 1.0) / r);
            }
        }
    }
    Ok(b.finish())
}

/// Bound on m_f − m_H obtained by integrating the linear differential
/// inequality for ψ = (m_f − m_H)₊.
pub fn riccati_bound(n: usize, h: f64, k: f64, r: f64) -> f64 {
    let nm1 = n as f64 - 1.0;
    let s = sn(h, r).value;
    nm1 * (4.0 * k / nm1).exp() * (sn(h, 2.0 * r).value + 2.0 * r) / (s * s)
}

/// The same bound with the H-scaling written as √|H| sn_H(2r) + 2|H| r.
pub fn riccati_bound_scaled(n: usize, h: f64, k: f64, r: f64) -> f64 {
    let nm1 = n as f64 - 1.0;
    let s = sn(h, r).value;
    let ah = h.abs();
    nm1 * (4.0 * k / nm1).exp() * (ah.sqrt() * sn(h, 2.0 * r).value + 2.0 * ah * r) / (s * s)
}

pub fn check_mc_app_b(
    space: &RotSymSpace,
    h: f64,
    k: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let n = space.n() as f64;
    let nm1 = n - 1.0;
    let mut b = ReportBuilder::new(TheoremId::McAppB, space.label(), opts);
    b.metric("H", h);
    b.metric("k", k);
    let upper = capped_upper(space, h_threshold(h, 2.0));
    if !b.certify(
        space,
        h,
        &[BoundKind::RicF, BoundKind::FBound { k }],
        Some(upper),
    )? {
        return Ok(b.finish());
    }
    let grid = opts.grid(upper)?;
    b.grid(grid);
    let quarter = h_threshold(h, 4.0).unwrap_or(f64::INFINITY);
    let mut scaled_min = f64::INFINITY;
    let mut all_main_tighter = true;
    for &c in space.check_nodes() {
        for r in grid.points() {
            let mh = model_mc(n, h, r);
            let mf = space.mean_curvature_f(r, c)?;
            let diff = mf - mh;
            let app = riccati_bound(space.n(), h, k, r);
            b.point("riccati", r, Some(c), diff, app);
            if h != 0.0 {
                scaled_min = scaled_min.min(riccati_bound_scaled(space.n(), h, k, r) - diff);
            }

            let main = if r <= quarter {
                model_mc(n + 4.0 * k, h, r) - mh
            } else {
                4.0 * k * mh / (nm1 * (2.0 * h.sqrt() * r).sin())
            };
            all_main_tighter &= main < app;
            b.compare(BoundComparison {
                r,
                c,
                main,
                riccati: app,
                main_tighter: main < app,
            });

            // ψ' + (2/(n−1))(m_H + f')ψ ≤ ρ
            let fj = space.f_jet(r, c);
            let psi = diff.max(0.0);
            let rho = (-(fj.d1 * (2.0 * mh + fj.d1)) / nm1).max(0.0);
            let dpsi = if diff > 0.0 {
                let w = space.warp().jet(r);
                let q = w.d1 / w.value;
                let dmf = nm1 * (w.d2 / w.value - q * q) - fj.d2;
                let dmh = -mh * mh / nm1 - nm1 * h;
                dmf - dmh
            } else {
                0.0
            };
            let lhs = dpsi + 2.0 / nm1 * (mh + fj.d1) * psi;
            b.point("psi_linear", r, Some(c), lhs, rho);
        }
    }
    b.metric(
        "main_tighter_everywhere",
        if all_main_tighter { 1.0 } else { 0.0 },
    );
    if h == 0.0 {
        b.metric(
            "riccati_to_main_ratio",
            4.0 * nm1 * (4.0 * k / nm1).exp() / (n + 4.0 * k - 1.0),
        );
    } else {
        b.metric("scaled_form_min_margin", scaled_min);
        b.note(
            "riccati bound evaluated as (n-1)e^{4k/(n-1)}(sn_H(2r)+2r)/sn_H(r)^2; the \
             form with sqrt|H| sn_H(2r) + 2|H|r agrees only at |H| = 1 and is reported \
             as scaled_form_min_margin",
        );
    }
    Ok(b.finish())
}

/// m_f ≤ m_H^{n+N} under Ric_f^N ≥ (n+N−1)H.
pub fn check_mc_n(
    space: &RotSymSpace,
    h: f64,
    big_n: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    if !(big_n > 0.0) {
        return Err(domain("N must be positive", big_n));
    }
    let n = space.n() as f64;
    let mut b = ReportBuilder::new(TheoremId::McN, space.label(), opts);
    b.metric("H", h);
    b.metric("N", big_n);
    let upper = capped_upper(space, h_threshold(h, 1.0));
    if !b.certify(
        space,
        h,
        &[BoundKind::RicFN { n_param: big_n }],
        Some(upper),
    )? {
        return Ok(b.finish());
    }
    let grid = opts.grid(upper)?;
    b.grid(grid);
    for &c in space.check_nodes() {
        for r in grid.points() {
            let lhs = space.mean_curvature_f(r, c)?;
            b.point("main", r, Some(c), lhs, model_mc(n + big_n, h, r));
        }
    }
    Ok(b.finish())
}
