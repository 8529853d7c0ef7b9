//! Volume comparisons and growth.

use serde::{Deserialize, Serialize};

use super::rigidity::{verdict, RigidityMode};
use super::{capped_upper, h_threshold, CheckOptions, CheckReport, ReportBuilder, TheoremId};
use crate::error::{Error, Result};
use crate::model::{area_density_model, vol_model, vol_model_weighted, ModelParams};
use crate::numerics::{integrate, Tolerance};
use crate::space::{BoundKind, RotSymSpace};

/// Radii used for ball ratio pairs.
const PAIR_POINTS: usize = 32;
/// Radii used for annulus quadruples.
const ANNULUS_POINTS: usize = 8;
/// Relative volume below which an annulus is treated as empty.
const UNRESOLVED: f64 = 1e-9;

/// About `max` indices spread over 0..len, always including the last.
fn subgrid(len: usize, max: usize) -> Vec<usize> {
    if len <= max {
        return (0..len).collect();
    }
    let mut idx: Vec<usize> = (0..max)
        .map(|i| (i as f64 * (len - 1) as f64 / (max - 1) as f64).round() as usize)
        .collect();
    idx.dedup();
    idx
}

fn cumulative_model(p: &ModelParams, radii: &[f64], weighted: bool) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(radii.len());
    let mut acc = 0.0;
    let mut prev = 0.0;
    for &r in radii {
        acc += if weighted {
            vol_model_weighted(p, prev, r)?
        } else {
            vol_model(p, prev, r)?
        };
        out.push(acc);
        prev = r;
    }
    Ok(out)
}

/// Ball ratios V(R)/V(r) ≤ bound(R, r) over a subgrid of pairs.
fn ball_pairs(
    b: &mut ReportBuilder,
    branch: &str,
    radii: &[f64],
    vol: &[f64],
    bound: impl Fn(usize, usize) -> f64,
) {
    let idx = subgrid(radii.len(), PAIR_POINTS);
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let lhs = vol[j] / vol[i];
            b.volume(
                branch,
                radii[i],
                Some(radii[j]),
                None,
                None,
                lhs,
                bound(i, j),
            );
        }
    }
}

/// Annulus ratios V(R1, R)/V(r1, r) against model annuli for nested
/// quadruples r1 ≤ R1, r ≤ R.
fn annulus_quadruples(b: &mut ReportBuilder, radii: &[f64], vol: &[f64], model: &[f64]) {
    let idx = subgrid(radii.len(), ANNULUS_POINTS);
    let m = idx.len();
    let m_last = radii.len() - 1;
    let mut skipped = 0usize;
    for a in 0..m {
        for c in a + 1..m {
            for a2 in a..m {
                for c2 in c.max(a2 + 1)..m {
                    if a2 == a && c2 == c {
                        continue;
                    }
                    let (i, j, k, l) = (idx[a], idx[c], idx[a2], idx[c2]);
                    // Inner annuli carrying no resolvable volume give 0/0.
                    if vol[j] - vol[i] <= UNRESOLVED * vol[m_last] {
                        skipped += 1;
                        continue;
                    }
                    let lhs = (vol[l] - vol[k]) / (vol[j] - vol[i]);
                    let rhs = (model[l] - model[k]) / (model[j] - model[i]);
                    b.volume(
                        "annulus",
                        radii[k],
                        Some(radii[l]),
                        Some((radii[i], radii[j])),
                        None,
                        lhs,
                        rhs,
                    );
                }
            }
        }
    }
    if skipped > 0 {
        b.note(format!(
            "{skipped} annulus ratios skipped: inner annulus volume below resolution"
        ));
    }
}

/// Vol_f(B(R)) ≤ Vol_f(B(r0)) + Σ_c w_c A_f(r0, c) ∫_{r0}^R e^{m_f(r0,c)(t−r0) − λ(t−r0)²/2} dt
/// under Ric_f ≥ λ.
pub fn check_vol_basic(
    space: &RotSymSpace,
    lambda: f64,
    r0: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let n = space.n() as f64;
    let upper = capped_upper(space, None);
    if !(r0 > 0.0 && r0 < upper) {
        return Err(Error::InvalidInput(format!(
            "r0 = {r0} must lie in (0, {upper})"
        )));
    }
    let mut b = ReportBuilder::new(TheoremId::VolBasic, space.label(), opts);
    b.metric("lambda", lambda);
    b.metric("r0", r0);
    if !b.certify(space, lambda / (n - 1.0), &[BoundKind::RicF], Some(upper))? {
        return Ok(b.finish());
    }
    let grid = opts.grid(upper)?;
    b.grid(grid);
    let radii: Vec<f64> = grid.points().into_iter().filter(|&r| r > r0).collect();
    let base = space.vol_f(0.0, r0)?;
    let ball = space.cumulative_vol_f(&radii)?;

    let tol = Tolerance::default().tightened(1e-2);
    let mut rhs = vec![base; radii.len()];
    for &(c, w) in space.direction_rule() {
        let a0 = space.area_density_f(r0, c);
        let m0 = space.mean_curvature_f(r0, c)?;
        let g = |t: f64| {
            let s = t - r0;
            (m0 * s - 0.5 * lambda * s * s).exp()
        };
        let mut acc = 0.0;
        let mut prev = r0;
        for (i, &r) in radii.iter().enumerate() {
            acc += integrate(g, prev, r, &tol)?;
            prev = r;
            rhs[i] += w * a0 * acc;
        }
    }
    for (i, &r) in radii.iter().enumerate() {
        b.volume("main", r0, Some(r), None, None, ball[i], rhs[i]);
    }
    if let Some(last) = ball.last() {
        b.metric("vol_f_at_upper", *last);
    }
    Ok(b.finish())
}

/// Ball, annulus and density comparisons under Ric_f ≥ (n−1)H, ∂_r f ≥ −a.
pub fn check_vol_a(
    space: &RotSymSpace,
    h: f64,
    a: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let upper = capped_upper(space, h_threshold(h, 2.0));
    let mut b = ReportBuilder::new(TheoremId::VolA, space.label(), opts);
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
    let radii = grid.points();
    let plain = ModelParams::new(space.n(), h)?;
    let weighted = plain.weighted(a);
    let vol = space.cumulative_vol_f(&radii)?;
    let model = cumulative_model(&plain, &radii, false)?;
    let model_a = cumulative_model(&weighted, &radii, true)?;

    ball_pairs(&mut b, "ball", &radii, &vol, |i, j| {
        (a * radii[j]).exp() * model[j] / model[i]
    });
    annulus_quadruples(&mut b, &radii, &vol, &model_a);

    for &c in space.check_nodes() {
        let dens: Vec<f64> = radii
            .iter()
            .map(|&r| space.area_density_f(r, c) / area_density_model(&weighted, r))
            .collect();
        for i in 1..radii.len() {
            b.volume(
                "density",
                radii[i],
                None,
                None,
                Some(c),
                dens[i],
                dens[i - 1],
            );
        }
    }
    let runs = b.equality_runs("density");
    if !runs.is_empty() {
        for (c, lo, hi) in runs {
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
        b.note(
            "equality of the volume ratio is tested as d_r f = -a; the statement of the \
             equality clause reads d_r f = a, which contradicts d_r f >= -a being attained",
        );
    }
    Ok(b.finish())
}

/// Ratios against the model in dimension n + 4k under Ric_f ≥ (n−1)H, |f| ≤ k.
pub fn check_vol_b(
    space: &RotSymSpace,
    h: f64,
    k: f64,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let upper = capped_upper(space, h_threshold(h, 4.0));
    let mut b = ReportBuilder::new(TheoremId::VolB, space.label(), opts);
    b.metric("H", h);
    b.metric("k", k);
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
    let radii = grid.points();
    let model_p = ModelParams::new(space.n(), h)?.shifted(4.0 * k);
    let vol = space.cumulative_vol_f(&radii)?;
    let model = cumulative_model(&model_p, &radii, false)?;

    ball_pairs(&mut b, "ball", &radii, &vol, |i, j| model[j] / model[i]);
    annulus_quadruples(&mut b, &radii, &vol, &model);
    for i in 1..radii.len() {
        b.volume(
            "monotone",
            radii[i],
            None,
            None,
            None,
            vol[i] / model[i],
            vol[i - 1] / model[i - 1],
        );
    }

    if upper > 1.0 {
        let v1 = space.vol_f(0.0, 1.0)?;
        let m1 = vol_model(&model_p, 0.0, 1.0)?;
        b.metric("model_vol_at_1", m1);
        let displayed = m1 >= 1.0;
        if !displayed {
            b.note("model volume of the unit ball is below 1; only the ratio form of the growth bound is checked");
        }
        for (i, &r) in radii.iter().enumerate().filter(|(_, &r)| r > 1.0) {
            b.volume(
                "growth",
                1.0,
                Some(r),
                None,
                None,
                vol[i],
                v1 * model[i] / m1,
            );
            if displayed {
                b.volume(
                    "growth_displayed",
                    1.0,
                    Some(r),
                    None,
                    None,
                    vol[i],
                    v1 * model[i],
                );
            }
        }
    }

    if let Some(r) = first_violation(space, &model_p, &b)? {
        b.metric("first_violation_radius", r);
    }
    Ok(b.finish())
}

/// Smallest R at which a ball ratio fails, refined by bisection between the
/// neighbouring grid radii.
fn first_violation(space: &RotSymSpace, p: &ModelParams, b: &ReportBuilder) -> Result<Option<f64>> {
    let worst = b
        .samples()
        .iter()
        .filter(|s| s.branch == "ball" && s.is_violation())
        .filter_map(|s| s.big_r.map(|big| (s.r, big)))
        .min_by(|x, y| x.1.total_cmp(&y.1));
    let Some((r, big)) = worst else {
        return Ok(None);
    };
    let floor = b.opts().volume_rel_floor;
    let v_r = space.vol_f(0.0, r)?;
    let m_r = vol_model(p, 0.0, r)?;
    let violated = |t: f64| -> Result<bool> {
        let lhs = space.vol_f(0.0, t)? / v_r;
        let rhs = vol_model(p, 0.0, t)? / m_r;
        Ok(rhs - lhs < -floor * lhs.abs().max(rhs.abs()))
    };
    let prev = b
        .samples()
        .iter()
        .filter(|s| s.branch == "ball" && s.r == r)
        .filter_map(|s| s.big_r)
        .filter(|&t| t < big)
        .fold(r, f64::max);
    let (mut lo, mut hi) = (prev, big);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if violated(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-10 * hi {
            break;
        }
    }
    Ok(Some(hi))
}

/// Hypothesis set for the linear growth check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum GrowthMode {
    /// Ric_f ≥ 0 and |f| ≤ k.
    Bounded { k: f64 },
    /// Ric_f ≥ 0 with f radially convex and critical points of f reaching
    /// the end of the space.
    Convex,
}

const CRITICAL_TOL: f64 = 1e-9;

/// (min f'' over the grid, max |f'| at r_max) across check nodes.
fn convexity(space: &RotSymSpace) -> (f64, f64) {
    let count = 512;
    let mut min_d2 = f64::INFINITY;
    let mut outer: f64 = 0.0;
    for &c in space.check_nodes() {
        for i in 0..count {
            let r = space.r_max() * i as f64 / (count - 1) as f64;
            min_d2 = min_d2.min(space.f_jet(r, c).d2);
        }
        outer = outer.max(space.f_jet(space.r_max(), c).d1.abs());
    }
    (min_d2, outer)
}

/// c(n, k) = inf_{t ≥ 2} (t−1)^m / (t((t+1)^m − (t−1)^m)), m = n + 4k.
pub fn growth_constant(n: usize, k: f64) -> f64 {
    let m = n as f64 + 4.0 * k;
    let g = |t: f64| {
        let lo = (t - 1.0).powf(m);
        lo / (t * ((t + 1.0).powf(m) - lo))
    };
    let steps = 4000;
    let mut best = 1.0 / (2.0 * m);
    for i in 0..=steps {
        let t = 2.0 * 1e6f64.powf(i as f64 / steps as f64);
        best = best.min(g(t));
    }
    best
}

/// Vol_f(B(t−1)) ≥ c(n, k)·Vol_f(B(1))·t on t ∈ [2, 0.9·r_max].
pub fn check_linear_growth(
    space: &RotSymSpace,
    mode: GrowthMode,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let mut b = ReportBuilder::new(TheoremId::LinearGrowth, space.label(), opts);
    let t_max = 0.9 * space.r_max();
    if !b.precondition(
        !space.pole_closed(),
        "space is closed; linear growth needs a noncompact end",
    ) {
        return Ok(b.finish());
    }
    if !(t_max > 2.0) {
        return Err(Error::InvalidInput(format!(
            "r_max = {} too small for t in [2, 0.9 r_max]",
            space.r_max()
        )));
    }
    let (bound, k) = match mode {
        GrowthMode::Bounded { k } => (BoundKind::FBound { k }, k),
        GrowthMode::Convex => (BoundKind::FSlope { a: 0.0 }, 0.0),
    };
    if let GrowthMode::Convex = mode {
        let (convex, outer) = convexity(space);
        b.precondition(
            convex >= opts.tol.margin_floor,
            format!("f is not radially convex (min f'' = {convex:e})"),
        );
        b.precondition(
            outer < CRITICAL_TOL,
            format!("f has no critical point near r_max (|f'| = {outer:e}); the critical set must be unbounded"),
        );
    }
    if !b.certify(space, 0.0, &[BoundKind::RicF, bound], None)? {
        return Ok(b.finish());
    }
    let c = growth_constant(space.n(), k);
    b.metric("growth_constant", c);
    let count = opts.grid_count;
    let ts: Vec<f64> = (0..count)
        .map(|i| 2.0 + (t_max - 2.0) * i as f64 / (count - 1) as f64)
        .collect();
    let inner: Vec<f64> = ts.iter().map(|t| t - 1.0).collect();
    let vols = space.cumulative_vol_f(&inner)?;
    let v1 = vols[0];
    let mut min_ratio = f64::INFINITY;
    for (&t, &v) in ts.iter().zip(&vols) {
        b.volume("main", t, None, None, None, c * v1 * t, v);
        min_ratio = min_ratio.min(v / (v1 * t));
    }
    b.metric("min_growth_ratio", min_ratio);
    let half = count / 2;
    let slope = (vols[count - 1] - vols[half]) / (ts[count - 1] - ts[half]);
    b.metric("growth_slope", slope / v1);
    Ok(b.finish())
}
