use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::{DirectionalWeight, RotSymSpace};
use crate::error::{Error, Result};
use crate::profile::RadialProfile;

const DEFAULT_R_MAX: f64 = 20.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuiltinInfo {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub summary: &'static str,
}

const BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo {
        name: "gaussian_soliton",
        params: &["lambda"],
        summary: "flat space, f = lambda r^2 / 2",
    },
    BuiltinInfo {
        name: "hyperbolic_quadratic",
        params: &[],
        summary: "hyperbolic space, f = (n-1) r^2",
    },
    BuiltinInfo {
        name: "euclidean_linear",
        params: &[],
        summary: "flat space, f = x_1 (axis-linear weight r c)",
    },
    BuiltinInfo {
        name: "euclidean_linear_f",
        params: &["a"],
        summary: "flat space, f = -a r",
    },
    BuiltinInfo {
        name: "sphere_perturbed",
        params: &["eps"],
        summary: "round sphere, f = eps cos r, closed at r = pi",
    },
    BuiltinInfo {
        name: "constant_curvature",
        params: &["H", "c"],
        summary: "space form of curvature H, f = c",
    },
];

pub fn list_builtins() -> &'static [BuiltinInfo] {
    BUILTINS
}

fn param(params: &BTreeMap<String, f64>, key: &str, default: f64) -> Result<f64> {
    match params.get(key) {
        Some(&v) if v.is_finite() => Ok(v),
        Some(&v) => Err(Error::InvalidInput(format!(
            "parameter `{key}` must be finite, got {v}"
        ))),
        None => Ok(default),
    }
}

/// Builds a named closed-form space of dimension `n`.
///
/// Every builtin accepts an `r_max` override except the closed ones.
pub fn builtin(name: &str, n: usize, params: &BTreeMap<String, f64>) -> Result<RotSymSpace> {
    let info = BUILTINS
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    for key in params.keys() {
        if key != "r_max" && !info.params.contains(&key.as_str()) {
            return Err(Error::InvalidInput(format!(
                "builtin `{name}` has no parameter `{key}` (expected {:?})",
                info.params
            )));
        }
    }
    let r_max = param(params, "r_max", DEFAULT_R_MAX)?;
    let nm1 = (n as f64) - 1.0;
    let flat = RadialProfile::linear(1.0, 0.0);
    let label = |extra: String| {
        if extra.is_empty() {
            format!("{name}(n={n})")
        } else {
            format!("{name}(n={n},{extra})")
        }
    };
    match name {
        "gaussian_soliton" => {
            let lambda = param(params, "lambda", 1.0)?;
            let f = RadialProfile::polynomial(vec![0.0, 0.0, 0.5 * lambda]);
            RotSymSpace::new(
                n,
                flat,
                DirectionalWeight::Radial(f),
                r_max,
                false,
                label(format!("lambda={lambda}")),
            )
        }
        "hyperbolic_quadratic" => {
            let f = RadialProfile::polynomial(vec![0.0, 0.0, nm1]);
            RotSymSpace::new(
                n,
                RadialProfile::sn(-1.0),
                DirectionalWeight::Radial(f),
                r_max,
                false,
                label(String::new()),
            )
        }
        "euclidean_linear" => RotSymSpace::new(
            n,
            flat.clone(),
            DirectionalWeight::AxisLinear {
                g: flat,
                h: RadialProfile::zero(),
            },
            r_max,
            false,
            label(String::new()),
        ),
        "euclidean_linear_f" => {
            let a = param(params, "a", 1.0)?;
            RotSymSpace::new(
                n,
                flat,
                DirectionalWeight::Radial(RadialProfile::linear(-a, 0.0)),
                r_max,
                false,
                label(format!("a={a}")),
            )
        }
        "sphere_perturbed" => {
            let eps = param(params, "eps", 0.0)?;
            RotSymSpace::new(
                n,
                RadialProfile::sn(1.0),
                DirectionalWeight::Radial(RadialProfile::cosine(eps, 1.0)),
                PI,
                true,
                label(format!("eps={eps}")),
            )
        }
        "constant_curvature" => {
            let h = param(params, "H", 0.0)?;
            let c = param(params, "c", 0.0)?;
            let weight = DirectionalWeight::Radial(RadialProfile::constant(c));
            let (r_max, closed) = if h > 0.0 {
                (PI / h.sqrt(), true)
            } else {
                (r_max, false)
            };
            RotSymSpace::new(
                n,
                RadialProfile::sn(h),
                weight,
                r_max,
                closed,
                label(format!("H={h},c={c}")),
            )
        }
        _ => unreachable!("builtin table and constructor disagree"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kv: &[(&str, f64)]) -> BTreeMap<String, f64> {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn soliton_and_hyperbolic_curvature() {
        let g = builtin("gaussian_soliton", 3, &params(&[("lambda", 1.0)])).unwrap();
        for &r in &[0.1, 1.0, 5.0] {
            assert!((g.ric_f_radial(r, 0.0).unwrap() - 1.0).abs() < 1e-14);
        }
        let h = builtin("hyperbolic_quadratic", 3, &BTreeMap::new()).unwrap();
        assert!((h.ric_f_radial(2.0, 0.0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn euclidean_linear_examples() {
        let e = builtin("euclidean_linear", 3, &BTreeMap::new()).unwrap();
        assert_eq!(e.ric_f_radial(1.0, 0.3).unwrap(), 0.0);
        assert!((e.mean_curvature_f(2.0, 1.0).unwrap()).abs() < 1e-15);
        assert!((e.ric_f_n_radial(1.0, 1.0, 4.0).unwrap() + 0.25).abs() < 1e-15);
        let ef = builtin("euclidean_linear_f", 3, &params(&[("a", 0.7)])).unwrap();
        assert!((ef.mean_curvature_f(3.0, 0.0).unwrap() - 2.0 / 3.0 - 0.7).abs() < 1e-15);
    }

    #[test]
    fn sphere_perturbed_curvature() {
        let s = builtin("sphere_perturbed", 3, &params(&[("eps", 0.5)])).unwrap();
        assert!(s.pole_closed());
        for &r in &[0.2, 1.0, 3.0] {
            let v = s.ric_f_radial(r, 0.0).unwrap();
            assert!((v - (2.0 - 0.5 * r.cos())).abs() < 1e-12);
            assert!(v >= 1.5);
        }
    }

    #[test]
    fn unknown_names_and_params() {
        assert!(matches!(
            builtin("torus", 3, &BTreeMap::new()),
            Err(Error::UnknownBuiltin(_))
        ));
        assert!(builtin("gaussian_soliton", 3, &params(&[("a", 1.0)])).is_err());
        assert_eq!(list_builtins().len(), 6);
    }
}
