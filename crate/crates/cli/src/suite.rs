//! Suite files: which checkers to run against a space, with their parameters.

use ricf_core::theorems::{self, CheckOptions, CheckReport, GrowthMode, RigidityMode, TheoremId};
use ricf_core::{BuiltSpace, Result as CoreResult};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "snake_case", deny_unknown_fields)]
pub enum CheckSpec {
    McBasic {
        lambda: f64,
        r0: f64,
    },
    McA {
        #[serde(rename = "H")]
        h: f64,
        a: f64,
    },
    McB {
        #[serde(rename = "H")]
        h: f64,
        k: f64,
    },
    McAppB {
        #[serde(rename = "H")]
        h: f64,
        k: f64,
    },
    McN {
        #[serde(rename = "H")]
        h: f64,
        #[serde(rename = "N")]
        big_n: f64,
    },
    VolBasic {
        lambda: f64,
        r0: f64,
    },
    VolA {
        #[serde(rename = "H")]
        h: f64,
        a: f64,
    },
    VolB {
        #[serde(rename = "H")]
        h: f64,
        k: f64,
    },
    /// Bounded mode when `k` is given, convex mode otherwise.
    LinearGrowth {
        #[serde(default)]
        k: Option<f64>,
    },
    Myers {
        #[serde(rename = "H")]
        h: f64,
        k: f64,
    },
    /// Flat configuration; ignores the space.
    Excess {
        n: usize,
        d: f64,
        #[serde(default)]
        heights: Option<Vec<f64>>,
        #[serde(default = "default_heights")]
        count: usize,
    },
    Hypersurface {
        #[serde(rename = "H")]
        h: f64,
        r1: f64,
        r2: f64,
    },
    RigidityFlat {
        lambda: f64,
        r_lo: f64,
        r_hi: f64,
        #[serde(default)]
        c: Option<f64>,
    },
    RigidityModel {
        #[serde(rename = "H")]
        h: f64,
        a: f64,
        r_lo: f64,
        r_hi: f64,
        #[serde(default)]
        c: Option<f64>,
    },
}

fn default_heights() -> usize {
    20
}

impl CheckSpec {
    pub fn theorem(&self) -> TheoremId {
        match self {
            CheckSpec::McBasic { .. } => TheoremId::McBasic,
            CheckSpec::McA { .. } => TheoremId::McA,
            CheckSpec::McB { .. } => TheoremId::McB,
            CheckSpec::McAppB { .. } => TheoremId::McAppB,
            CheckSpec::McN { .. } => TheoremId::McN,
            CheckSpec::VolBasic { .. } => TheoremId::VolBasic,
            CheckSpec::VolA { .. } => TheoremId::VolA,
            CheckSpec::VolB { .. } => TheoremId::VolB,
            CheckSpec::LinearGrowth { .. } => TheoremId::LinearGrowth,
            CheckSpec::Myers { .. } => TheoremId::Myers,
            CheckSpec::Excess { .. } => TheoremId::Excess,
            CheckSpec::Hypersurface { .. } => TheoremId::Hypersurface,
            CheckSpec::RigidityFlat { .. } | CheckSpec::RigidityModel { .. } => TheoremId::Rigidity,
        }
    }

    pub fn run(&self, space: &BuiltSpace, opts: &CheckOptions) -> CoreResult<CheckReport> {
        let s = &space.space;
        match *self {
            CheckSpec::McBasic { lambda, r0 } => theorems::check_mc_basic(s, lambda, r0, opts),
            CheckSpec::McA { h, a } => theorems::check_mc_a(s, h, a, opts),
            CheckSpec::McB { h, k } => theorems::check_mc_b(s, h, k, opts),
            CheckSpec::McAppB { h, k } => theorems::check_mc_app_b(s, h, k, opts),
            CheckSpec::McN { h, big_n } => theorems::check_mc_n(s, h, big_n, opts),
            CheckSpec::VolBasic { lambda, r0 } => theorems::check_vol_basic(s, lambda, r0, opts),
            CheckSpec::VolA { h, a } => theorems::check_vol_a(s, h, a, opts),
            CheckSpec::VolB { h, k } => theorems::check_vol_b(s, h, k, opts),
            CheckSpec::LinearGrowth { k } => {
                let mode = match k {
                    Some(k) => GrowthMode::Bounded { k },
                    None => GrowthMode::Convex,
                };
                theorems::check_linear_growth(s, mode, opts)
            }
            CheckSpec::Myers { h, k } => theorems::check_myers(s, h, k, opts),
            CheckSpec::Excess {
                n,
                d,
                ref heights,
                count,
            } => {
                let hs = heights
                    .clone()
                    .unwrap_or_else(|| theorems::excess_heights(d, count));
                theorems::euclidean_excess_check(n, d, &hs, opts)
            }
            CheckSpec::Hypersurface { h, r1, r2 } => {
                theorems::hypersurface_distance_check(s, h, r1, r2, opts)
            }
            CheckSpec::RigidityFlat {
                lambda,
                r_lo,
                r_hi,
                c,
            } => theorems::run_rigidity_suite(
                s,
                RigidityMode::FlatSplit { lambda },
                (r_lo, r_hi),
                c,
                opts,
            ),
            CheckSpec::RigidityModel {
                h,
                a,
                r_lo,
                r_hi,
                c,
            } => theorems::run_rigidity_suite(
                s,
                RigidityMode::ModelLinear { h, a },
                (r_lo, r_hi),
                c,
                opts,
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    /// Evaluate inequalities even when a hypothesis is not certified.
    #[serde(default)]
    pub falsify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq_tol: Option<f64>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

/// Command-line settings layered over the suite file.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub falsify: bool,
    pub grid: Option<usize>,
    pub tol_margin: Option<f64>,
}

impl SuiteConfig {
    pub fn options(&self, o: &Overrides) -> Result<CheckOptions> {
        let mut opts = CheckOptions::default();
        if let Some(g) = o.grid.or(self.grid) {
            if g < 2 {
                return Err(CliError::Usage(format!(
                    "grid needs at least 2 points, got {g}"
                )));
            }
            opts.grid_count = g;
        }
        if let Some(t) = o.tol_margin.or(self.tol_margin) {
            if !(t <= 0.0) {
                return Err(CliError::Usage(format!(
                    "margin floor must be <= 0, got {t}"
                )));
            }
            opts.tol.margin_floor = t;
        }
        if let Some(e) = self.eq_tol {
            opts.eq_tol = e;
        }
        opts.falsify = self.falsify || o.falsify;
        Ok(opts)
    }
}

/// Runs every check of the suite. Checks run concurrently; the result order
/// follows the suite.
pub fn run_suite(
    space: &BuiltSpace,
    suite: &SuiteConfig,
    o: &Overrides,
) -> Result<Vec<CheckReport>> {
    let opts = suite.options(o)?;
    let results: Vec<CoreResult<CheckReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = suite
            .checks
            .iter()
            .map(|c| scope.spawn(move || c.run(space, &opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("checker thread panicked"))
            .collect()
    });
    suite
        .checks
        .iter()
        .zip(results)
        .enumerate()
        .map(|(i, (c, r))| {
            r.map_err(|source| CliError::Check {
                check: format!("#{} {}", i + 1, c.theorem()),
                source,
            })
        })
        .collect()
}

/// 0 when every report passes, 1 on any violation, 2 when the only problems
/// are uncertified hypotheses.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| !r.violations.is_empty()) {
        1
    } else if reports.iter().any(|r| !r.precondition_ok) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    use ricf_core::SpaceSpec;

    #[test]
    fn suite_parses_with_renamed_fields() {
        let src = r#"
            falsify = true
            grid = 32
            [[checks]]
            theorem = "mc_a"
            H = 0.0
            a = 0.7
            [[checks]]
            theorem = "linear_growth"
        "#;
        let s: SuiteConfig = toml::from_str(src).unwrap();
        assert_eq!(s.checks[0], CheckSpec::McA { h: 0.0, a: 0.7 });
        assert_eq!(s.checks[1], CheckSpec::LinearGrowth { k: None });
        assert!(s.falsify);
    }

    #[test]
    fn unknown_theorem_rejected() {
        let src = "[[checks]]\ntheorem = \"poincare\"\n";
        assert!(toml::from_str::<SuiteConfig>(src).is_err());
        let src = "[[checks]]\ntheorem = \"mc_a\"\nH = 0.0\na = 1.0\nextra = 2\n";
        assert!(toml::from_str::<SuiteConfig>(src).is_err());
    }

    #[test]
    fn exit_codes() {
        let spec = SpaceSpec::from_builtin(
            "euclidean_linear_f",
            3,
            [("a".to_string(), 0.7)]
                .into_iter()
                .collect::<BTreeMap<_, _>>(),
        );
        let space = spec.build().unwrap();
        let suite = SuiteConfig {
            checks: vec![CheckSpec::McA { h: 0.0, a: 0.7 }],
            ..Default::default()
        };
        let reps = run_suite(&space, &suite, &Overrides::default()).unwrap();
        assert_eq!(exit_code(&reps), 0);
        let suite = SuiteConfig {
            checks: vec![CheckSpec::McB { h: 0.0, k: 0.1 }],
            ..Default::default()
        };
        let reps = run_suite(&space, &suite, &Overrides::default()).unwrap();
        assert_eq!(exit_code(&reps), 2);
        let reps = run_suite(
            &space,
            &suite,
            &Overrides {
                falsify: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(exit_code(&reps), 1);
    }
}
