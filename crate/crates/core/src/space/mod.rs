//! Rotationally symmetric smooth metric measure spaces
//! `(dr² + φ(r)² g_S, e^{-f} dvol)` seen from the pole.

mod builtin;
mod certificate;
mod generator;

pub use builtin::{builtin, list_builtins, BuiltinInfo};
pub use certificate::{slack, verify_bound, BoundKind, CurvatureCertificate};
pub use generator::{generate_space, GeneratedSpace, GeneratorConfig, GeneratorMode};

use crate::error::{domain, Error, Result};
use crate::numerics::{integrate, DirectionRule, Tolerance};
use crate::profile::{Jet, RadialProfile};
use crate::special::sphere_measure;

/// Weight as a function of (r, c), where c is the cosine between the initial
/// direction of the radial geodesic and a fixed axis.
#[derive(Clone, Debug)]
pub enum DirectionalWeight {
    Radial(RadialProfile),
    /// f(r, c) = c·g(r) + h(r)
    AxisLinear {
        g: RadialProfile,
        h: RadialProfile,
    },
}

impl DirectionalWeight {
    pub fn zero() -> Self {
        DirectionalWeight::Radial(RadialProfile::zero())
    }

    /// f together with ∂_r f and ∂_r² f along the geodesic with cosine c.
    pub fn jet(&self, r: f64, c: f64) -> Jet {
        match self {
            DirectionalWeight::Radial(f) => f.jet(r),
            DirectionalWeight::AxisLinear { g, h } => g.jet(r).scale(c) + h.jet(r),
        }
    }

    pub fn is_radial(&self) -> bool {
        matches!(self, DirectionalWeight::Radial(_))
    }

    /// The same weight plus a constant.
    pub fn shifted(&self, offset: f64) -> Self {
        match self {
            DirectionalWeight::Radial(f) => DirectionalWeight::Radial(f.shifted(offset)),
            DirectionalWeight::AxisLinear { g, h } => DirectionalWeight::AxisLinear {
                g: g.clone(),
                h: h.shifted(offset),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct RotSymSpace {
    n: usize,
    warp: RadialProfile,
    weight: DirectionalWeight,
    r_max: f64,
    pole_closed: bool,
    label: String,
    /// Quadrature nodes over directions; a single node for radial weights.
    directions: Vec<(f64, f64)>,
    /// Cosines at which pointwise statements are checked.
    check_nodes: Vec<f64>,
    quad_tol: Tolerance,
}

const VALIDATION_POINTS: usize = 2000;

impl RotSymSpace {
    pub fn new(
        n: usize,
        warp: RadialProfile,
        weight: DirectionalWeight,
        r_max: f64,
        pole_closed: bool,
        label: impl Into<String>,
    ) -> Result<Self> {
        let label = label.into();
        if n < 2 {
            return Err(Error::InvalidSpace {
                invariant: "n >= 2",
                detail: format!("n = {n}"),
            });
        }
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::InvalidSpace {
                invariant: "0 < r_max < inf",
                detail: format!("r_max = {r_max}"),
            });
        }
        let pole = warp.jet(0.0);
        if pole.value.abs() > 1e-12 {
            return Err(Error::InvalidSpace {
                invariant: "phi(0) = 0",
                detail: format!("phi(0) = {}", pole.value),
            });
        }
        if (pole.d1 - 1.0).abs() >= 1e-9 {
            return Err(Error::InvalidSpace {
                invariant: "phi'(0) = 1",
                detail: format!("phi'(0) = {}", pole.d1),
            });
        }
        let lo = 1e-3 * r_max;
        let hi = if pole_closed {
            r_max * (1.0 - 1e-3)
        } else {
            r_max
        };
        for i in 0..VALIDATION_POINTS {
            let r = lo + (hi - lo) * i as f64 / (VALIDATION_POINTS - 1) as f64;
            let v = warp.value(r);
            if !(v > 0.0) {
                return Err(Error::InvalidSpace {
                    invariant: "phi > 0 on (0, r_max)",
                    detail: format!("phi({r}) = {v}"),
                });
            }
        }
        if pole_closed {
            let end = warp.value(r_max);
            if end.abs() >= 1e-7 {
                return Err(Error::InvalidSpace {
                    invariant: "phi(r_max) = 0 for a closed space",
                    detail: format!("phi({r_max}) = {end}"),
                });
            }
        }
        let (directions, check_nodes) = match &weight {
            DirectionalWeight::Radial(_) => (vec![(0.0, sphere_measure(n as f64))], vec![0.0]),
            DirectionalWeight::AxisLinear { .. } => {
                let rule = DirectionRule::new(n);
                let dirs: Vec<(f64, f64)> = rule
                    .nodes
                    .iter()
                    .copied()
                    .zip(rule.weights.iter().copied())
                    .collect();
                let mut nodes = vec![-1.0];
                nodes.extend(rule.nodes.iter().copied());
                nodes.push(1.0);
                (dirs, nodes)
            }
        };
        Ok(RotSymSpace {
            n,
            warp,
            weight,
            r_max,
            pole_closed,
            label,
            directions,
            check_nodes,
            quad_tol: Tolerance::default().tightened(1e-2),
        })
    }

    pub fn with_quadrature_tolerance(mut self, tol: Tolerance) -> Self {
        self.quad_tol = tol;
        self
    }

    /// The same space with f replaced by f + offset.
    pub fn with_weight_shift(&self, offset: f64) -> Self {
        RotSymSpace {
            weight: self.weight.shifted(offset),
            ..self.clone()
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn warp(&self) -> &RadialProfile {
        &self.warp
    }
    pub fn weight(&self) -> &DirectionalWeight {
        &self.weight
    }
    pub fn r_max(&self) -> f64 {
        self.r_max
    }
    pub fn pole_closed(&self) -> bool {
        self.pole_closed
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    /// Diameter of a closed space (distance between the poles).
    pub fn diameter(&self) -> Option<f64> {
        self.pole_closed.then_some(self.r_max)
    }
    pub fn check_nodes(&self) -> &[f64] {
        &self.check_nodes
    }
    pub fn direction_rule(&self) -> &[(f64, f64)] {
        &self.directions
    }

    /// Largest radius at which pointwise quantities may be evaluated.
    pub fn interior_limit(&self) -> f64 {
        if self.pole_closed {
            self.r_max * (1.0 - 1e-3)
        } else {
            self.r_max
        }
    }

    fn interior(&self, r: f64) -> Result<()> {
        let ok = r > 0.0
            && if self.pole_closed {
                r < self.r_max
            } else {
                r <= self.r_max
            };
        if ok {
            Ok(())
        } else {
            Err(domain("radius outside (0, r_max)", r))
        }
    }

    pub fn f_jet(&self, r: f64, c: f64) -> Jet {
        self.weight.jet(r, c)
    }

    /// Ric(∂r, ∂r) = −(n−1)φ''/φ.
    pub fn ric_radial(&self, r: f64) -> Result<f64> {
        self.interior(r)?;
        let j = self.warp.jet(r);
        Ok(-((self.n - 1) as f64) * j.d2 / j.value)
    }

    pub fn ric_f_radial(&self, r: f64, c: f64) -> Result<f64> {
        Ok(self.ric_radial(r)? + self.weight.jet(r, c).d2)
    }

    pub fn ric_f_n_radial(&self, r: f64, c: f64, big_n: f64) -> Result<f64> {
        if !(big_n > 0.0) {
            return Err(domain("N must be positive", big_n));
        }
        let d1 = self.weight.jet(r, c).d1;
        Ok(self.ric_f_radial(r, c)? - d1 * d1 / big_n)
    }

    /// Unweighted mean curvature (n−1)φ'/φ of the geodesic sphere.
    pub fn mean_curvature(&self, r: f64) -> Result<f64> {
        self.interior(r)?;
        let j = self.warp.jet(r);
        Ok((self.n - 1) as f64 * j.d1 / j.value)
    }

    pub fn mean_curvature_f(&self, r: f64, c: f64) -> Result<f64> {
        Ok(self.mean_curvature(r)? - self.weight.jet(r, c).d1)
    }

    /// e^{−f} φ^{n−1}.
    pub fn area_density_f(&self, r: f64, c: f64) -> f64 {
        let phi = self.warp.value(r).max(0.0);
        (-self.weight.jet(r, c).value).exp() * phi.powi(self.n as i32 - 1)
    }

    /// ∫_{S^{n−1}} A_f(r, θ) dθ.
    pub fn sphere_density_f(&self, r: f64) -> f64 {
        let phi = self.warp.value(r).max(0.0);
        let area = phi.powi(self.n as i32 - 1);
        if area == 0.0 {
            return 0.0;
        }
        self.directions
            .iter()
            .map(|&(c, w)| w * (-self.weight.jet(r, c).value).exp())
            .sum::<f64>()
            * area
    }

    fn check_volume_interval(&self, r1: f64, r2: f64) -> Result<()> {
        if !(r1 >= 0.0 && r2 >= r1 && r2 <= self.r_max * (1.0 + 1e-12)) {
            return Err(Error::InvalidInput(format!(
                "f-volume needs 0 <= r1 <= r2 <= r_max = {}, got [{r1}, {r2}]",
                self.r_max
            )));
        }
        Ok(())
    }

    /// f-volume of the annulus r1 ≤ d(p, ·) ≤ r2.
    pub fn vol_f(&self, r1: f64, r2: f64) -> Result<f64> {
        self.check_volume_interval(r1, r2)?;
        let r2 = r2.min(self.r_max);
        integrate(|t| self.sphere_density_f(t), r1, r2, &self.quad_tol)
    }

    /// Ball f-volumes at increasing radii, accumulated piece by piece.
    pub fn cumulative_vol_f(&self, radii: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(radii.len());
        let mut acc = 0.0;
        let mut prev = 0.0;
        for &r in radii {
            if r < prev {
                return Err(Error::InvalidInput("radii must be nondecreasing".into()));
            }
            acc += self.vol_f(prev, r)?;
            out.push(acc);
            prev = r;
        }
        Ok(out)
    }
}
