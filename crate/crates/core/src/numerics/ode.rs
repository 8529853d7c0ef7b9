//! Jacobi equation φ'' + k(r) φ = 0, φ(0) = 0, φ'(0) = 1.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::profile::{Jet, Profile, ProfileKind};

type Curvature = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiOptions {
    pub abs: f64,
    pub rel: f64,
    /// Largest accepted step; bounds the dense-output interpolation error.
    pub h_max: f64,
    /// Radius of the exact series step off the pole.
    pub h0: f64,
    pub h_min: f64,
    /// |φ| beyond this aborts the integration.
    pub blowup: f64,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions {
            abs: 1e-13,
            rel: 1e-12,
            h_max: 0.01,
            h0: 1e-4,
            h_min: 1e-12,
            blowup: 1e150,
        }
    }
}

/// Dense-output solution of the Jacobi equation.
#[derive(Clone)]
pub struct JacobiSolution {
    r: Vec<f64>,
    phi: Vec<f64>,
    dphi: Vec<f64>,
    k: Curvature,
    k0: f64,
    h0: f64,
    first_zero: Option<f64>,
}

impl fmt::Debug for JacobiSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JacobiSolution")
            .field("steps", &self.r.len())
            .field("r_end", &self.r_end())
            .field("first_zero", &self.first_zero)
            .finish()
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates the Jacobi equation with curvature `k` from the pole to `r_max`.
///
/// The first zero of φ, if any, is located on the dense output but the
/// integration continues up to `r_max`.
pub fn solve_jacobi<K>(k: K, r_max: f64, opts: &JacobiOptions) -> Result<JacobiSolution>
where
    K: Fn(f64) -> f64 + Send + Sync + 'static,
{
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "r_max must be positive, got {r_max}"
        )));
    }
    let k: Curvature = Arc::new(k);
    let k0 = k(0.0);
    if !k0.is_finite() {
        return Err(Error::StepFailure {
            r: 0.0,
            reason: "curvature is not finite at the pole".into(),
        });
    }
    let h0 = opts.h0.min(0.5 * r_max);
    let mut sol = JacobiSolution {
        r: vec![h0],
        phi: vec![h0 - k0 * h0.powi(3) / 6.0],
        dphi: vec![1.0 - 0.5 * k0 * h0 * h0],
        k: k.clone(),
        k0,
        h0,
        first_zero: None,
    };
    let f = |r: f64, y: [f64; 2]| [y[1], -k(r) * y[0]];

    let mut r = h0;
    let mut y = [sol.phi[0], sol.dphi[0]];
    let mut h = opts.h_max.min(r_max - r);
    let mut stages = [[0.0; 2]; 7];
    stages[0] = f(r, y);
    while r < r_max {
        let last = r + h >= r_max;
        if last {
            h = r_max - r;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, stage) in stages.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * stage[0];
                ys[1] += h * A[s][j] * stage[1];
            }
            stages[s] = f(r + C[s] * h, ys);
        }
        let mut y5 = y;
        let mut err = 0.0f64;
        for i in 0..2 {
            let mut d5 = 0.0;
            let mut d4 = 0.0;
            for s in 0..7 {
                d5 += B5[s] * stages[s][i];
                d4 += B4[s] * stages[s][i];
            }
            y5[i] += h * d5;
            let scale = opts.abs + opts.rel * y[i].abs().max(y5[i].abs());
            err = err.max((h * (d5 - d4)).abs() / scale);
        }
        if !err.is_finite() || !y5[0].is_finite() {
            return Err(Error::StepFailure {
                r,
                reason: "solution is not finite".into(),
            });
        }
        if err <= 1.0 {
            let r_new = if last { r_max } else { r + h };
            if sol.first_zero.is_none() && y5[0] <= 0.0 && y[0] > 0.0 {
                sol.first_zero = Some(locate_zero(r, y, r_new, y5));
            }
            r = r_new;
            y = y5;
            stages[0] = stages[6];
            sol.r.push(r);
            sol.phi.push(y[0]);
            sol.dphi.push(y[1]);
            if y[0].abs() > opts.blowup {
                return Err(Error::StepFailure {
                    r,
                    reason: format!("|phi| exceeded {:e}", opts.blowup),
                });
            }
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * factor).min(opts.h_max);
        if r < r_max && h < opts.h_min {
            return Err(Error::StepFailure {
                r,
                reason: format!("step size fell below {:e}", opts.h_min),
            });
        }
    }
    Ok(sol)
}

fn hermite(t: f64, h: f64, y0: f64, d0: f64, y1: f64, d1: f64) -> (f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    let v = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
    let dh00 = 6.0 * t2 - 6.0 * t;
    let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    let dh01 = -6.0 * t2 + 6.0 * t;
    let dh11 = 3.0 * t2 - 2.0 * t;
    let dv = (dh00 * y0 + dh01 * y1) / h + dh10 * d0 + dh11 * d1;
    (v, dv)
}

/// Bisection for the sign change of the Hermite interpolant on one step.
fn locate_zero(r0: f64, y0: [f64; 2], r1: f64, y1: [f64; 2]) -> f64 {
    let span = r1 - r0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if hermite(mid, span, y0[0], y0[1], y1[0], y1[1]).0 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    r0 + 0.5 * (lo + hi) * span
}

impl JacobiSolution {
    pub fn first_zero(&self) -> Option<f64> {
        self.first_zero
    }

    pub fn r_end(&self) -> f64 {
        *self.r.last().unwrap_or(&0.0)
    }

    /// Number of accepted steps.
    pub fn steps(&self) -> usize {
        self.r.len().saturating_sub(1)
    }

    fn segment(&self, r: f64) -> usize {
        let n = self.r.len();
        match self.r.partition_point(|&x| x <= r) {
            0 => 0,
            p if p >= n => n.saturating_sub(2),
            p => p - 1,
        }
    }
}

impl Profile for JacobiSolution {
    fn jet(&self, r: f64) -> Jet {
        let k = (self.k)(r);
        if r <= self.h0 || self.r.len() < 2 {
            let phi = r - self.k0 * r * r * r / 6.0;
            let dphi = 1.0 - 0.5 * self.k0 * r * r;
            return Jet::new(phi, dphi, -k * phi);
        }
        let i = self.segment(r);
        let (r0, r1) = (self.r[i], self.r[i + 1]);
        let span = r1 - r0;
        let t = (r - r0) / span;
        let (p0, p1) = (self.phi[i], self.phi[i + 1]);
        let (d0, d1) = (self.dphi[i], self.dphi[i + 1]);
        let (phi, _) = hermite(t, span, p0, d0, p1, d1);
        let dd0 = -(self.k)(r0) * p0;
        let dd1 = -(self.k)(r1) * p1;
        let (dphi, _) = hermite(t, span, d0, dd0, d1, dd1);
        Jet::new(phi, dphi, -k * phi)
    }

    fn kind(&self) -> ProfileKind {
        ProfileKind::OdeDenseOutput
    }
}
