use serde::{Deserialize, Serialize};

use super::{CheckOptions, CheckReport, ReportBuilder, TheoremId};
use crate::error::{Error, Result};
use crate::model::sn;
use crate::space::RotSymSpace;

/// Which equality case to confirm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum RigidityMode {
    /// m_f decreasing at exactly rate λ: flat radial curvature, ∂²f = λ.
    FlatSplit { lambda: f64 },
    /// m_f − m_H ≡ a: φ = sn_H and ∂_r f ≡ −a.
    ModelLinear {
        #[serde(rename = "H")]
        h: f64,
        a: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidityVerdict {
    pub mode: RigidityMode,
    pub c: Option<f64>,
    pub r_lo: f64,
    pub r_hi: f64,
    /// Largest deviation of the warp from the rigid profile.
    pub warp_deviation: f64,
    /// Largest deviation of the weight from the rigid form.
    pub weight_deviation: f64,
    pub confirmed: bool,
}

const RIGIDITY_POINTS: usize = 64;

/// Checks the conclusions of an equality case on [r_lo, r_hi] along the
/// geodesic with direction cosine `c`.
pub fn run_rigidity_suite(
    space: &RotSymSpace,
    mode: RigidityMode,
    interval: (f64, f64),
    c: Option<f64>,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let (lo, hi) = interval;
    if !(lo > 0.0 && hi >= lo && hi <= space.r_max()) {
        return Err(Error::InvalidInput(format!(
            "rigidity interval [{lo}, {hi}] outside (0, r_max]"
        )));
    }
    let mut b = ReportBuilder::new(TheoremId::Rigidity, space.label(), opts);
    let verdict = verdict(space, mode, interval, c, opts, Some(&mut b));
    if let RigidityMode::ModelLinear { .. } = mode {
        b.note(
            "equality of the volume ratio is tested as d_r f = -a; the statement \
             of the volume equality clause reads d_r f = a, which is incompatible \
             with the hypothesis d_r f >= -a attaining equality",
        );
    }
    b.rigidity(verdict);
    Ok(b.finish())
}

pub(crate) fn verdict(
    space: &RotSymSpace,
    mode: RigidityMode,
    (lo, hi): (f64, f64),
    c: Option<f64>,
    opts: &CheckOptions,
    mut builder: Option<&mut ReportBuilder>,
) -> RigidityVerdict {
    let tol = opts.rigidity_tol;
    let cc = c.unwrap_or(0.0);
    let mut warp_dev: f64 = 0.0;
    let mut weight_dev: f64 = 0.0;
    for i in 0..RIGIDITY_POINTS {
        let r = if hi > lo {
            lo + (hi - lo) * i as f64 / (RIGIDITY_POINTS - 1) as f64
        } else {
            lo
        };
        let phi = space.warp().jet(r);
        let f = space.f_jet(r, cc);
        let (wd, fd) = match mode {
            RigidityMode::FlatSplit { lambda } => (phi.d2.abs(), (f.d2 - lambda).abs()),
            RigidityMode::ModelLinear { h, a } => {
                ((phi.value - sn(h, r).value).abs(), (f.d1 + a).abs())
            }
        };
        warp_dev = warp_dev.max(wd);
        weight_dev = weight_dev.max(fd);
        if let Some(b) = builder.as_deref_mut() {
            b.point("rigidity_warp", r, c, wd, tol);
            b.point("rigidity_weight", r, c, fd, tol);
        }
    }
    RigidityVerdict {
        mode,
        c,
        r_lo: lo,
        r_hi: hi,
        warp_deviation: warp_dev,
        weight_deviation: weight_dev,
        confirmed: warp_dev < tol && weight_dev < tol,
    }
}
