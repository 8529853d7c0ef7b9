//! Constant-curvature model spaces M_H^n and their weighted versions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::{integrate, Tolerance};
use crate::profile::Jet;
use crate::special::sphere_measure;

/// The solution of sn'' + H·sn = 0, sn(0) = 0, sn'(0) = 1, with two derivatives.
pub fn sn(h: f64, r: f64) -> Jet {
    if h.abs() * r * r < 1e-10 {
        return Jet::new(r - h * r * r * r / 6.0, 1.0 - 0.5 * h * r * r, -h * r);
    }
    if h > 0.0 {
        let s = h.sqrt();
        let (sin, cos) = (s * r).sin_cos();
        Jet::new(sin / s, cos, -s * sin)
    } else {
        let s = (-h).sqrt();
        let x = s * r;
        Jet::new(x.sinh() / s, x.cosh(), s * x.sinh())
    }
}

/// π/√H for H > 0, infinity otherwise.
pub fn conjugate_radius(h: f64) -> f64 {
    if h > 0.0 {
        PI / h.sqrt()
    } else {
        f64::INFINITY
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub dim_shift: f64,
}

impl ModelParams {
    pub fn new(n: usize, h: f64) -> Result<Self> {
        Self::with(n, h, 0.0, 0.0)
    }

    pub fn with(n: usize, h: f64, a: f64, dim_shift: f64) -> Result<Self> {
        let p = ModelParams { n, h, a, dim_shift };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(domain("model dimension n must be >= 2", self.n as f64));
        }
        if !self.h.is_finite() {
            return Err(domain("model curvature must be finite", self.h));
        }
        if !(self.a >= 0.0 && self.a.is_finite()) {
            return Err(domain("weight slope a must be >= 0", self.a));
        }
        if !(self.dim_shift >= 0.0 && self.dim_shift.is_finite()) {
            return Err(domain("dimension shift must be >= 0", self.dim_shift));
        }
        Ok(())
    }

    /// n + dim_shift.
    pub fn n_eff(&self) -> f64 {
        self.n as f64 + self.dim_shift
    }

    pub fn shifted(self, dim_shift: f64) -> Self {
        ModelParams { dim_shift, ..self }
    }

    pub fn weighted(self, a: f64) -> Self {
        ModelParams { a, ..self }
    }
}

/// m_H in effective dimension n + dim_shift: (n_eff − 1)·sn'/sn.
pub fn mean_curvature_model(p: &ModelParams, r: f64) -> Result<f64> {
    p.validate()?;
    if !(r > 0.0) {
        return Err(domain("model mean curvature needs r > 0", r));
    }
    if r >= conjugate_radius(p.h) {
        return Err(domain("model mean curvature needs r < pi/sqrt(H)", r));
    }
    let j = sn(p.h, r);
    Ok((p.n_eff() - 1.0) * j.d1 / j.value)
}

fn check_interval(p: &ModelParams, r1: f64, r2: f64) -> Result<()> {
    p.validate()?;
    if !(r1 >= 0.0) {
        return Err(domain("model volume needs r1 >= 0", r1));
    }
    if !(r2 >= r1) || !r2.is_finite() {
        return Err(Error::InvalidInput(format!(
            "model volume needs 0 <= r1 <= r2, got [{r1}, {r2}]"
        )));
    }
    let cap = conjugate_radius(p.h);
    if r2 > cap * (1.0 + 1e-12) {
        return Err(domain("model volume needs r2 <= pi/sqrt(H)", r2));
    }
    Ok(())
}

fn area_power(h: f64, m: f64, t: f64) -> f64 {
    let s = sn(h, t).value.max(0.0);
    s.powf(m - 1.0)
}

/// ω_{n_eff−1} ∫_{r1}^{r2} sn_H(t)^{n_eff−1} dt.
pub fn vol_model(p: &ModelParams, r1: f64, r2: f64) -> Result<f64> {
    check_interval(p, r1, r2)?;
    let m = p.n_eff();
    let omega = sphere_measure(m);
    if p.h == 0.0 {
        return Ok(omega * (r2.powf(m) - r1.powf(m)) / m);
    }
    let r2 = r2.min(conjugate_radius(p.h));
    let tol = Tolerance::default().tightened(1e-2);
    Ok(omega * integrate(|t| area_power(p.h, m, t), r1, r2, &tol)?)
}

/// ω_{n_eff−1} ∫_{r1}^{r2} e^{a t} sn_H(t)^{n_eff−1} dt.
pub fn vol_model_weighted(p: &ModelParams, r1: f64, r2: f64) -> Result<f64> {
    if p.a == 0.0 {
        return vol_model(p, r1, r2);
    }
    check_interval(p, r1, r2)?;
    let m = p.n_eff();
    let r2 = r2.min(conjugate_radius(p.h));
    let tol = Tolerance::default().tightened(1e-2);
    let a = p.a;
    Ok(sphere_measure(m) * integrate(|t| (a * t).exp() * area_power(p.h, m, t), r1, r2, &tol)?)
}

/// Area density e^{a r} sn_H(r)^{n_eff−1} of the weighted model (per unit direction).
pub fn area_density_model(p: &ModelParams, r: f64) -> f64 {
    (p.a * r).exp() * area_power(p.h, p.n_eff(), r)
}
