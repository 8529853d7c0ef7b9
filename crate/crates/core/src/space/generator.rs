//! Random spaces satisfying a prescribed radial curvature bound.
//!
//! A random weight f and a nonnegative slack s fix the target radial Ricci
//! curvature; the warp then solves the Jacobi equation with k = ric/(n−1),
//! so the hypothesis holds with slack exactly s.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{verify_bound, BoundKind, CurvatureCertificate, DirectionalWeight, RotSymSpace};
use crate::error::{Error, Result};
use crate::numerics::{solve_jacobi, JacobiOptions};
use crate::profile::{Profile, RadialProfile, SmoothSum, SmoothTerm};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum GeneratorMode {
    /// |f| ≤ k and Ric_f ≥ (n−1)H.
    FBounded { k: f64 },
    /// ∂_r f ≥ −a and Ric_f ≥ (n−1)H.
    FSlope { a: f64 },
    /// Ric_f^N ≥ (n+N−1)H.
    NTensor {
        #[serde(rename = "N")]
        n_param: f64,
    },
}

impl GeneratorMode {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorMode::FBounded { .. } => "f_bounded",
            GeneratorMode::FSlope { .. } => "f_slope",
            GeneratorMode::NTensor { .. } => "n_tensor",
        }
    }

    pub fn param(&self) -> f64 {
        match *self {
            GeneratorMode::FBounded { k } => k,
            GeneratorMode::FSlope { a } => a,
            GeneratorMode::NTensor { n_param } => n_param,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    #[serde(rename = "H")]
    pub h: f64,
    pub mode: GeneratorMode,
    pub seed: u64,
    /// Integration range; defaults to 10 for H ≤ 0 and 1.5π/√H for H > 0.
    pub r_cap: Option<f64>,
    /// Close the space at the first zero of φ when there is one.
    pub closed: bool,
    pub zero_weight: bool,
    pub zero_slack: bool,
    pub slack_scale: f64,
}

impl GeneratorConfig {
    pub fn new(n: usize, h: f64, mode: GeneratorMode, seed: u64) -> Self {
        GeneratorConfig {
            n,
            h,
            mode,
            seed,
            r_cap: None,
            closed: false,
            zero_weight: false,
            zero_slack: false,
            slack_scale: 0.5,
        }
    }

    pub fn cap(&self) -> f64 {
        self.r_cap.unwrap_or(if self.h > 0.0 {
            1.5 * PI / self.h.sqrt()
        } else {
            10.0
        })
    }

    fn validate(&self) -> Result<()> {
        let bad = |reason: String| Error::Generation {
            seed: self.seed,
            reason,
        };
        if self.n < 2 {
            return Err(bad(format!("n must be >= 2, got {}", self.n)));
        }
        if !self.h.is_finite() {
            return Err(bad("H must be finite".into()));
        }
        let p = self.mode.param();
        let ok = match self.mode {
            GeneratorMode::NTensor { .. } => p > 0.0,
            _ => p >= 0.0,
        };
        if !ok || !p.is_finite() {
            return Err(bad(format!("invalid {} parameter {p}", self.mode.name())));
        }
        if !(self.cap() > 0.0 && self.cap().is_finite()) {
            return Err(bad(format!("invalid r_cap {}", self.cap())));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedSpace {
    pub space: RotSymSpace,
    pub certificates: Vec<CurvatureCertificate>,
    pub config: GeneratorConfig,
    pub weight: SmoothSum,
    pub slack: SmoothSum,
}

impl GeneratedSpace {
    /// The curvature certificate (first entry).
    pub fn curvature(&self) -> &CurvatureCertificate {
        &self.certificates[0]
    }
}

const SUP_GRID: usize = 2001;

fn grid_sup(s: &SmoothSum, cap: f64, pick: impl Fn(&SmoothSum, f64) -> f64) -> f64 {
    (0..SUP_GRID)
        .map(|i| pick(s, cap * i as f64 / (SUP_GRID - 1) as f64).abs())
        .fold(0.0, f64::max)
}

fn random_bumps(rng: &mut ChaCha8Rng, count: usize, scale: f64) -> Vec<SmoothTerm> {
    (0..count)
        .map(|_| SmoothTerm::EvenGaussian {
            amp: rng.random_range(-1.0..1.0),
            center: rng.random_range(0.0..0.8) * scale,
            width: rng.random_range(0.08..0.25) * scale,
        })
        .collect()
}

fn random_weight(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng, scale: f64) -> SmoothSum {
    let cap = cfg.cap();
    match cfg.mode {
        GeneratorMode::FBounded { k } => {
            let count = rng.random_range(3..=6);
            let raw = SmoothSum {
                terms: random_bumps(rng, count, scale),
            };
            let sup = grid_sup(&raw, cap, |s, r| s.jet(r).value);
            if k == 0.0 || sup == 0.0 {
                SmoothSum::default()
            } else {
                raw.scaled(0.9 * k / sup)
            }
        }
        GeneratorMode::FSlope { a } => {
            let mut terms = Vec::new();
            if a > 0.0 {
                let count = rng.random_range(1..=3);
                let shares: Vec<f64> = (0..count).map(|_| rng.random_range(0.1..1.0)).collect();
                let total: f64 = shares.iter().sum();
                let budget = rng.random_range(0.3..1.0) * 0.6 * a;
                for s in shares {
                    terms.push(SmoothTerm::Hyperbolic {
                        coef: -budget * s / total,
                        width: rng.random_range(0.05..0.3) * scale,
                    });
                }
                let count = rng.random_range(2..=4);
                let bumps = SmoothSum {
                    terms: random_bumps(rng, count, scale),
                };
                let sup = grid_sup(&bumps, cap, |s, r| s.jet(r).d1);
                if sup > 0.0 {
                    terms.extend(bumps.scaled(0.35 * a / sup).terms);
                }
            }
            let rising = rng.random_range(0..=2);
            for _ in 0..rising {
                terms.push(SmoothTerm::Hyperbolic {
                    coef: rng.random_range(0.0..0.5),
                    width: rng.random_range(0.05..0.3) * scale,
                });
            }
            SmoothSum { terms }
        }
        GeneratorMode::NTensor { .. } => {
            let count = rng.random_range(3..=6);
            SmoothSum {
                terms: random_bumps(rng, count, scale),
            }
            .scaled(0.5)
        }
    }
}

fn random_slack(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng, scale: f64) -> SmoothSum {
    let count = rng.random_range(0..=3);
    SmoothSum {
        terms: (0..count)
            .map(|_| SmoothTerm::Gaussian {
                amp: rng.random_range(0.0..1.0) * cfg.slack_scale,
                center: rng.random_range(0.0..1.0) * scale,
                width: rng.random_range(0.1..0.3) * scale,
            })
            .collect(),
    }
}

/// Draws a random space satisfying the hypotheses of `cfg.mode` and returns
/// it with independently re-verified certificates.
pub fn generate_space(cfg: &GeneratorConfig) -> Result<GeneratedSpace> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cap = cfg.cap();
    let scale = if cfg.h > 0.0 {
        cap.min(PI / cfg.h.sqrt())
    } else {
        cap
    };
    let mut weight = random_weight(cfg, &mut rng, scale);
    let mut slack = random_slack(cfg, &mut rng, scale);
    if cfg.zero_weight {
        weight = SmoothSum::default();
    }
    if cfg.zero_slack {
        slack = SmoothSum::default();
    }

    let n = cfg.n as f64;
    let (base, inv_n) = match cfg.mode {
        GeneratorMode::NTensor { n_param } => ((n + n_param - 1.0) * cfg.h, 1.0 / n_param),
        _ => ((n - 1.0) * cfg.h, 0.0),
    };
    let (wk, sk) = (weight.clone(), slack.clone());
    let k = move |r: f64| {
        let f = wk.jet(r);
        (base + inv_n * f.d1 * f.d1 - f.d2 + sk.jet(r).value) / (n - 1.0)
    };
    let sol = solve_jacobi(k, cap, &JacobiOptions::default()).map_err(|e| Error::Generation {
        seed: cfg.seed,
        reason: e.to_string(),
    })?;

    let (r_max, closed) = match sol.first_zero() {
        Some(z) if cfg.closed => {
            let slope = sol.jet(z).d1;
            if slope.abs() < 1e-3 {
                return Err(Error::Generation {
                    seed: cfg.seed,
                    reason: format!("phi'(r_max) = {slope} too close to 0 at the far pole"),
                });
            }
            (z, true)
        }
        Some(z) => (0.95 * z, false),
        None => (cap, false),
    };
    if r_max < 1e-2 * cap.min(1.0) {
        return Err(Error::Generation {
            seed: cfg.seed,
            reason: format!("usable radius {r_max} too small"),
        });
    }
    let label = format!(
        "generated(n={},H={},{}={},seed={})",
        cfg.n,
        cfg.h,
        cfg.mode.name(),
        cfg.mode.param(),
        cfg.seed
    );
    let space = RotSymSpace::new(
        cfg.n,
        RadialProfile::new(sol),
        DirectionalWeight::Radial(RadialProfile::new(weight.clone())),
        r_max,
        closed,
        label,
    )
    .map_err(|e| Error::Generation {
        seed: cfg.seed,
        reason: e.to_string(),
    })?;

    let bounds: Vec<BoundKind> = match cfg.mode {
        GeneratorMode::FBounded { k } => vec![BoundKind::RicF, BoundKind::FBound { k }],
        GeneratorMode::FSlope { a } => vec![BoundKind::RicF, BoundKind::FSlope { a }],
        GeneratorMode::NTensor { n_param } => vec![BoundKind::RicFN { n_param }],
    };
    let certificates = bounds
        .into_iter()
        .map(|b| verify_bound(&space, cfg.h, b, None, 512))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratedSpace {
        space,
        certificates,
        config: *cfg,
        weight,
        slack,
    })
}
