//! Radial profiles: scalar functions of arclength with exact first and
//! second derivatives. They carry the warp φ, the weight f and the model
//! functions sn_H uniformly.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::model;

/// Value together with its first two derivatives at one radius.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const ZERO: Jet = Jet {
        value: 0.0,
        d1: 0.0,
        d2: 0.0,
    };

    pub fn new(value: f64, d1: f64, d2: f64) -> Self {
        Jet { value, d1, d2 }
    }

    pub fn scale(self, s: f64) -> Self {
        Jet::new(s * self.value, s * self.d1, s * self.d2)
    }
}

impl std::ops::Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    ClosedForm,
    OdeDenseOutput,
    Spline,
}

/// Anything that can be evaluated as a radial profile.
pub trait Profile: Send + Sync + fmt::Debug {
    fn jet(&self, r: f64) -> Jet;

    fn kind(&self) -> ProfileKind {
        ProfileKind::ClosedForm
    }
}

/// Shared, immutable handle to a radial profile.
#[derive(Clone)]
pub struct RadialProfile(Arc<dyn Profile>);

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl RadialProfile {
    pub fn new<P: Profile + 'static>(p: P) -> Self {
        RadialProfile(Arc::new(p))
    }

    #[inline]
    pub fn jet(&self, r: f64) -> Jet {
        self.0.jet(r)
    }

    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        self.0.jet(r).value
    }

    #[inline]
    pub fn d1(&self, r: f64) -> f64 {
        self.0.jet(r).d1
    }

    #[inline]
    pub fn d2(&self, r: f64) -> f64 {
        self.0.jet(r).d2
    }

    pub fn kind(&self) -> ProfileKind {
        self.0.kind()
    }

    pub fn constant(c: f64) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `slope · r + intercept`
    pub fn linear(slope: f64, intercept: f64) -> Self {
        Self::polynomial(vec![intercept, slope])
    }

    /// Polynomial with coefficients in ascending order.
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Self::new(Polynomial { coeffs })
    }

    /// The model Jacobi profile sn_H.
    pub fn sn(h: f64) -> Self {
        Self::new(Sn { h })
    }

    /// `amp · cos(freq · r)`
    pub fn cosine(amp: f64, freq: f64) -> Self {
        Self::new(Cosine { amp, freq })
    }

    /// The same profile shifted by a constant.
    pub fn shifted(&self, offset: f64) -> Self {
        Self::new(Shifted {
            inner: self.clone(),
            offset,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Profile for Polynomial {
    fn jet(&self, r: f64) -> Jet {
        // Horner on value, first and second derivative simultaneously.
        let mut p = 0.0;
        let mut dp = 0.0;
        let mut ddp = 0.0;
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * r + 2.0 * dp;
            dp = dp * r + p;
            p = p * r + c;
        }
        Jet::new(p, dp, ddp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sn {
    pub h: f64,
}

impl Profile for Sn {
    fn jet(&self, r: f64) -> Jet {
        model::sn(self.h, r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cosine {
    pub amp: f64,
    pub freq: f64,
}

impl Profile for Cosine {
    fn jet(&self, r: f64) -> Jet {
        let (s, c) = (self.freq * r).sin_cos();
        Jet::new(
            self.amp * c,
            -self.amp * self.freq * s,
            -self.amp * self.freq * self.freq * c,
        )
    }
}

#[derive(Clone, Debug)]
struct Shifted {
    inner: RadialProfile,
    offset: f64,
}

impl Profile for Shifted {
    fn jet(&self, r: f64) -> Jet {
        let j = self.inner.jet(r);
        Jet::new(j.value + self.offset, j.d1, j.d2)
    }

    fn kind(&self) -> ProfileKind {
        self.inner.kind()
    }
}

/// Building block of [`SmoothSum`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SmoothTerm {
    /// `amp · exp(-(r - center)² / (2 width²))`
    Gaussian { amp: f64, center: f64, width: f64 },
    /// Gaussian mirrored about r = 0, so the sum is even in r and smooth at
    /// the pole.
    EvenGaussian { amp: f64, center: f64, width: f64 },
    /// `coef · (sqrt(width² + r²) - width)`; slope ranges over (0, coef).
    Hyperbolic { coef: f64, width: f64 },
}

fn gaussian_jet(amp: f64, center: f64, width: f64, r: f64) -> Jet {
    let x = (r - center) / width;
    let e = amp * (-0.5 * x * x).exp();
    Jet::new(e, -e * x / width, e * (x * x - 1.0) / (width * width))
}

impl SmoothTerm {
    pub fn jet(&self, r: f64) -> Jet {
        match *self {
            SmoothTerm::Gaussian { amp, center, width } => gaussian_jet(amp, center, width, r),
            SmoothTerm::EvenGaussian { amp, center, width } => {
                gaussian_jet(amp, center, width, r) + gaussian_jet(amp, -center, width, r)
            }
            SmoothTerm::Hyperbolic { coef, width } => {
                let q = (width * width + r * r).sqrt();
                Jet::new(
                    coef * (q - width),
                    coef * r / q,
                    coef * width * width / (q * q * q),
                )
            }
        }
    }
}

/// Finite sum of smooth terms; used for random weights and slack functions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SmoothSum {
    pub terms: Vec<SmoothTerm>,
}

impl SmoothSum {
    pub fn scaled(mut self, s: f64) -> Self {
        for t in &mut self.terms {
            match t {
                SmoothTerm::Gaussian { amp, .. } | SmoothTerm::EvenGaussian { amp, .. } => {
                    *amp *= s
                }
                SmoothTerm::Hyperbolic { coef, .. } => *coef *= s,
            }
        }
        self
    }
}

impl Profile for SmoothSum {
    fn jet(&self, r: f64) -> Jet {
        self.terms.iter().fold(Jet::ZERO, |acc, t| acc + t.jet(r))
    }
}

/// Central-difference check used by tests: largest relative mismatch between
/// the reported derivatives and finite differences on `radii`.
pub fn derivative_mismatch(p: &RadialProfile, radii: &[f64], step: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for &r in radii {
        let j = p.jet(r);
        let fd1 = (p.value(r + step) - p.value(r - step)) / (2.0 * step);
        let fd2 = (p.d1(r + step) - p.d1(r - step)) / (2.0 * step);
        worst = worst
            .max((fd1 - j.d1).abs() / j.d1.abs().max(1.0))
            .max((fd2 - j.d2).abs() / j.d2.abs().max(1.0));
    }
    worst
}
