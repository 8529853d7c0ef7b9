//! Cubic spline profiles over user-supplied knots.

use crate::error::{Error, Result};
use crate::profile::{Jet, Profile, ProfileKind};

/// End condition of a cubic spline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    /// Zero second derivative.
    Natural,
    /// Prescribed first derivative.
    Clamped(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(knots: &[(f64, f64)], left: Boundary, right: Boundary) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidInput(
                "spline needs at least two knots".into(),
            ));
        }
        if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidInput("spline knots must be finite".into()));
        }
        if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidInput(
                "spline knots must be strictly increasing in r".into(),
            ));
        }
        let x: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let y: Vec<f64> = knots.iter().map(|k| k.1).collect();
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();

        // Tridiagonal system for the knot second derivatives.
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        match left {
            Boundary::Natural => diag[0] = 1.0,
            Boundary::Clamped(s) => {
                diag[0] = 2.0 * h[0];
                sup[0] = h[0];
                rhs[0] = 6.0 * ((y[1] - y[0]) / h[0] - s);
            }
        }
        for i in 1..n - 1 {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        match right {
            Boundary::Natural => diag[n - 1] = 1.0,
            Boundary::Clamped(s) => {
                sub[n - 1] = h[n - 2];
                diag[n - 1] = 2.0 * h[n - 2];
                rhs[n - 1] = 6.0 * (s - (y[n - 1] - y[n - 2]) / h[n - 2]);
            }
        }
        // Thomas algorithm.
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        Ok(CubicSpline { x, y, m })
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }
}

impl Profile for CubicSpline {
    fn jet(&self, r: f64) -> Jet {
        let n = self.x.len();
        let i = match self.x.partition_point(|&xi| xi <= r) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let (a, b) = (x1 - r, r - x0);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let value = m0 * a * a * a / (6.0 * h)
            + m1 * b * b * b / (6.0 * h)
            + (y0 / h - m0 * h / 6.0) * a
            + (y1 / h - m1 * h / 6.0) * b;
        let d1 = -m0 * a * a / (2.0 * h) + m1 * b * b / (2.0 * h) - (y0 / h - m0 * h / 6.0)
            + (y1 / h - m1 * h / 6.0);
        let d2 = (m0 * a + m1 * b) / h;
        Jet::new(value, d1, d2)
    }

    fn kind(&self) -> ProfileKind {
        ProfileKind::Spline
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{derivative_mismatch, RadialProfile};

    #[test]
    fn reproduces_cubic_with_clamped_ends() {
        // A cubic is reproduced exactly when both end slopes are clamped.
        let f = |x: f64| 1.0 + x - 0.5 * x * x + 0.1 * x * x * x;
        let df = |x: f64| 1.0 - x + 0.3 * x * x;
        let knots: Vec<_> = (0..9)
            .map(|i| (0.5 * i as f64, f(0.5 * i as f64)))
            .collect();
        let s = CubicSpline::new(
            &knots,
            Boundary::Clamped(df(0.0)),
            Boundary::Clamped(df(4.0)),
        )
        .unwrap();
        for i in 0..80 {
            let x = 0.05 * i as f64;
            assert!((s.jet(x).value - f(x)).abs() < 1e-12);
            assert!((s.jet(x).d1 - df(x)).abs() < 1e-11);
        }
    }

    #[test]
    fn natural_end_has_zero_curvature() {
        let knots = [(0.0, 0.0), (1.0, 1.0), (2.0, 0.5), (3.0, 2.0)];
        let s = CubicSpline::new(&knots, Boundary::Natural, Boundary::Natural).unwrap();
        assert!(s.jet(0.0).d2.abs() < 1e-14);
        assert!(s.jet(3.0).d2.abs() < 1e-14);
    }

    #[test]
    fn derivatives_consistent() {
        let knots: Vec<_> = (0..30)
            .map(|i| {
                let x = 0.2 * i as f64;
                (x, x.sin())
            })
            .collect();
        let s = RadialProfile::new(
            CubicSpline::new(&knots, Boundary::Clamped(1.0), Boundary::Natural).unwrap(),
        );
        let radii: Vec<f64> = (1..50).map(|i| 0.11 * i as f64).collect();
        assert!(derivative_mismatch(&s, &radii, 1e-5) < 1e-3);
    }

    #[test]
    fn rejects_unsorted_knots() {
        let knots = [(0.0, 0.0), (1.0, 1.0), (0.5, 0.5)];
        assert!(CubicSpline::new(&knots, Boundary::Natural, Boundary::Natural).is_err());
    }
}
