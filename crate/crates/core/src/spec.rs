//! Serializable description of a space.
//!
//! Exactly one of `builtin`, `warp` (with optional `weight`) or `generator`
//! must be present.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::ExprProfile;
use crate::profile::RadialProfile;
use crate::space::{
    builtin, generate_space, CurvatureCertificate, DirectionalWeight, GeneratorConfig,
    GeneratorMode, RotSymSpace,
};
use crate::spline::{Boundary, CubicSpline};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinSpec {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

/// Warp φ: an expression in r, spline knots (r, φ) or the model sn_H.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum WarpSpec {
    Expr(String),
    Knots(Vec<[f64; 2]>),
    Sn(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisLinearSpec {
    pub g: String,
    #[serde(default = "zero_expr")]
    pub h: String,
}

fn zero_expr() -> String {
    "0".into()
}

/// Weight f: radial expression, f = g(r)·c + h(r), or radial spline knots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    Radial(String),
    AxisLinear(AxisLinearSpec),
    Knots(Vec<[f64; 2]>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(rename = "H")]
    pub h: f64,
    /// One of `f_bounded`, `f_slope`, `n_tensor`.
    pub mode: GeneratorModeName,
    /// k, a or N depending on the mode.
    pub param: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_cap: Option<f64>,
    #[serde(default)]
    pub closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorModeName {
    FBounded,
    FSlope,
    NTensor,
}

impl GeneratorSpec {
    pub fn mode(&self) -> GeneratorMode {
        match self.mode {
            GeneratorModeName::FBounded => GeneratorMode::FBounded { k: self.param },
            GeneratorModeName::FSlope => GeneratorMode::FSlope { a: self.param },
            GeneratorModeName::NTensor => GeneratorMode::NTensor {
                n_param: self.param,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub name: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    #[serde(default)]
    pub pole_closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<BuiltinSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warp: Option<WarpSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
}

/// A constructed space with any certificates produced while building it.
#[derive(Clone, Debug)]
pub struct BuiltSpace {
    pub space: RotSymSpace,
    pub certificates: Vec<CurvatureCertificate>,
}

fn expr(src: &str) -> Result<RadialProfile> {
    Ok(RadialProfile::new(ExprProfile::parse(src)?))
}

fn knots(k: &[[f64; 2]], left: Boundary) -> Result<RadialProfile> {
    let pts: Vec<(f64, f64)> = k.iter().map(|p| (p[0], p[1])).collect();
    Ok(RadialProfile::new(CubicSpline::new(
        &pts,
        left,
        Boundary::Natural,
    )?))
}

impl SpaceSpec {
    pub fn from_builtin(name: &str, n: usize, params: BTreeMap<String, f64>) -> Self {
        SpaceSpec {
            name: name.to_string(),
            n,
            r_max: None,
            pole_closed: false,
            seed: None,
            builtin: Some(BuiltinSpec {
                name: name.to_string(),
                params,
            }),
            warp: None,
            weight: None,
            generator: None,
        }
    }

    pub fn from_generator(name: &str, cfg: &GeneratorConfig) -> Self {
        let (mode, param) = match cfg.mode {
            GeneratorMode::FBounded { k } => (GeneratorModeName::FBounded, k),
            GeneratorMode::FSlope { a } => (GeneratorModeName::FSlope, a),
            GeneratorMode::NTensor { n_param } => (GeneratorModeName::NTensor, n_param),
        };
        SpaceSpec {
            name: name.to_string(),
            n: cfg.n,
            r_max: None,
            pole_closed: cfg.closed,
            seed: Some(cfg.seed),
            builtin: None,
            warp: None,
            weight: None,
            generator: Some(GeneratorSpec {
                h: cfg.h,
                mode,
                param,
                r_cap: cfg.r_cap,
                closed: cfg.closed,
            }),
        }
    }

    /// Checks the structural invariants without building anything.
    pub fn validate(&self) -> Result<()> {
        let sources = [
            self.builtin.is_some(),
            self.warp.is_some(),
            self.generator.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if sources != 1 {
            return Err(Error::InvalidInput(format!(
                "space `{}` needs exactly one of builtin, warp or generator (found {sources})",
                self.name
            )));
        }
        if self.weight.is_some() && self.warp.is_none() {
            return Err(Error::InvalidInput(
                "weight is only allowed together with an explicit warp".into(),
            ));
        }
        if self.generator.is_some() && self.seed.is_none() {
            return Err(Error::InvalidInput("generator needs a seed".into()));
        }
        if self.warp.is_some() && self.r_max.is_none() {
            return Err(Error::InvalidInput("explicit warp needs r_max".into()));
        }
        if let Some(r) = self.r_max {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "r_max must be positive, got {r}"
                )));
            }
        }
        if let Some(WarpSpec::Expr(s)) = &self.warp {
            ExprProfile::parse(s)?;
        }
        match &self.weight {
            Some(WeightSpec::Radial(s)) => {
                ExprProfile::parse(s)?;
            }
            Some(WeightSpec::AxisLinear(a)) => {
                ExprProfile::parse(&a.g)?;
                ExprProfile::parse(&a.h)?;
            }
            _ => {}
        }
        Ok(())
    }

    pub fn build(&self) -> Result<BuiltSpace> {
        self.validate()?;
        if let Some(b) = &self.builtin {
            let mut params = b.params.clone();
            if let Some(r) = self.r_max {
                params.insert("r_max".into(), r);
            }
            let space = builtin(&b.name, self.n, &params)?;
            return Ok(BuiltSpace {
                space,
                certificates: Vec::new(),
            });
        }
        if let Some(g) = &self.generator {
            let mut cfg = GeneratorConfig::new(self.n, g.h, g.mode(), self.seed.unwrap_or(0));
            cfg.r_cap = g.r_cap;
            cfg.closed = g.closed;
            let generated = generate_space(&cfg)?;
            return Ok(BuiltSpace {
                space: generated.space,
                certificates: generated.certificates,
            });
        }
        let warp = match self.warp.as_ref().expect("validated") {
            WarpSpec::Expr(s) => expr(s)?,
            WarpSpec::Knots(k) => knots(k, Boundary::Clamped(1.0))?,
            WarpSpec::Sn(h) => RadialProfile::sn(*h),
        };
        let weight = match &self.weight {
            None => DirectionalWeight::zero(),
            Some(WeightSpec::Radial(s)) => DirectionalWeight::Radial(expr(s)?),
            Some(WeightSpec::AxisLinear(a)) => DirectionalWeight::AxisLinear {
                g: expr(&a.g)?,
                h: expr(&a.h)?,
            },
            Some(WeightSpec::Knots(k)) => DirectionalWeight::Radial(knots(k, Boundary::Natural)?),
        };
        let space = RotSymSpace::new(
            self.n,
            warp,
            weight,
            self.r_max.expect("validated"),
            self.pole_closed,
            self.name.clone(),
        )?;
        Ok(BuiltSpace {
            space,
            certificates: Vec::new(),
        })
    }
}
