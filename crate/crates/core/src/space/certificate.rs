use serde::{Deserialize, Serialize};

use super::RotSymSpace;
use crate::error::Result;
use crate::numerics::Tolerance;

/// Hypothesis kinds a space can be certified against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundKind {
    /// Ric_f(∂r, ∂r) ≥ (n−1)H
    RicF,
    /// Ric_f^N(∂r, ∂r) ≥ (n+N−1)H
    RicFN {
        #[serde(rename = "N")]
        n_param: f64,
    },
    /// |f| ≤ k
    FBound { k: f64 },
    /// ∂_r f ≥ −a
    FSlope { a: f64 },
}

impl BoundKind {
    fn is_curvature(&self) -> bool {
        matches!(self, BoundKind::RicF | BoundKind::RicFN { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureCertificate {
    #[serde(rename = "H")]
    pub h: f64,
    pub bound: BoundKind,
    pub min_slack: f64,
    pub argmin_r: f64,
    pub argmin_c: f64,
    pub r_lo: f64,
    pub r_hi: f64,
    pub samples: usize,
    pub margin_floor: f64,
}

impl CurvatureCertificate {
    pub fn is_valid(&self) -> bool {
        self.min_slack >= self.margin_floor
    }

    pub fn summary(&self) -> String {
        let what = match self.bound {
            BoundKind::RicF => format!("Ric_f >= (n-1)*{}", self.h),
            BoundKind::RicFN { n_param } => {
                format!("Ric_f^N >= (n+N-1)*{} with N = {n_param}", self.h)
            }
            BoundKind::FBound { k } => format!("|f| <= {k}"),
            BoundKind::FSlope { a } => format!("f' >= -{a}"),
        };
        format!(
            "{what}: min slack {:e} at r = {}, c = {} ({})",
            self.min_slack,
            self.argmin_r,
            self.argmin_c,
            if self.is_valid() { "valid" } else { "VIOLATED" }
        )
    }
}

/// Pointwise slack of a hypothesis at (r, c); negative means violated.
pub fn slack(space: &RotSymSpace, h: f64, bound: BoundKind, r: f64, c: f64) -> Result<f64> {
    let n = space.n() as f64;
    Ok(match bound {
        BoundKind::RicF => space.ric_f_radial(r, c)? - (n - 1.0) * h,
        BoundKind::RicFN { n_param } => {
            space.ric_f_n_radial(r, c, n_param)? - (n + n_param - 1.0) * h
        }
        BoundKind::FBound { k } => k - space.f_jet(r, c).value.abs(),
        BoundKind::FSlope { a } => space.f_jet(r, c).d1 + a,
    })
}

/// Grid evaluation of a hypothesis over r ∈ [r_lo, min(r_cap, r_max)] and
/// every check node c. Curvature grids start at 1e-3 of the upper end, weight
/// grids at the pole.
pub fn verify_bound(
    space: &RotSymSpace,
    h: f64,
    bound: BoundKind,
    r_cap: Option<f64>,
    count: usize,
) -> Result<CurvatureCertificate> {
    let r_hi = r_cap.unwrap_or(f64::INFINITY).min(space.interior_limit());
    let r_lo = if bound.is_curvature() {
        1e-3 * r_hi
    } else {
        0.0
    };
    let count = count.max(2);
    let mut best = (f64::INFINITY, r_lo, 0.0);
    for i in 0..count {
        let r = if i + 1 == count {
            r_hi
        } else {
            r_lo + (r_hi - r_lo) * i as f64 / (count - 1) as f64
        };
        for &c in space.check_nodes() {
            let s = slack(space, h, bound, r, c)?;
            if s < best.0 || s.is_nan() {
                best = (s, r, c);
            }
        }
    }
    Ok(CurvatureCertificate {
        h,
        bound,
        min_slack: best.0,
        argmin_r: best.1,
        argmin_c: best.2,
        r_lo,
        r_hi,
        samples: count * space.check_nodes().len(),
        margin_floor: Tolerance::default().margin_floor,
    })
}
