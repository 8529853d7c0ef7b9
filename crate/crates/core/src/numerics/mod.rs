//! Shared numerical kernels.

mod ode;
mod quadrature;
mod sphere;

pub use ode::{solve_jacobi, JacobiOptions, JacobiSolution};
pub use quadrature::{integrate, integrate_with_limit};
pub use sphere::{sphere_average, DirectionRule, GaussJacobi, DIRECTION_ORDER};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Uniform,
    Log,
}

/// Radial evaluation grid. Never contains r = 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(r_min: f64, r_max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !(r_min > 0.0 && r_min.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "grid r_min must be > 0, got {r_min}"
            )));
        }
        if !(r_max > r_min && r_max.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "grid needs r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidInput(format!(
                "grid count must be >= 2, got {count}"
            )));
        }
        Ok(GridSpec {
            r_min,
            r_max,
            count,
            spacing,
        })
    }

    pub fn uniform(r_min: f64, r_max: f64, count: usize) -> Result<Self> {
        Self::new(r_min, r_max, count, Spacing::Uniform)
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                if i + 1 == self.count {
                    return self.r_max;
                }
                match self.spacing {
                    Spacing::Uniform => self.r_min + t * (self.r_max - self.r_min),
                    Spacing::Log => self.r_min * (self.r_max / self.r_min).powf(t),
                }
            })
            .collect()
    }
}

/// Numerical tolerances shared by quadrature, ODE and inequality checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    /// Samples with margin below this (negative) value count as violations.
    pub margin_floor: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-10,
            rel: 1e-9,
            margin_floor: -1e-7,
        }
    }
}

impl Tolerance {
    pub fn with_margin_floor(mut self, floor: f64) -> Self {
        self.margin_floor = -floor.abs();
        self
    }

    pub fn tightened(self, factor: f64) -> Self {
        Tolerance {
            abs: self.abs * factor,
            rel: self.rel * factor,
            ..self
        }
    }
}
