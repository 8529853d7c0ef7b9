//! Grid checkers for the comparison inequalities.
//!
//! Every checker certifies its hypotheses first. When a certificate fails
//! the check is skipped (precondition failure) unless `falsify` is set, in
//! which case the inequality is evaluated anyway so that its failure can be
//! located.

mod global;
mod mean;
mod rigidity;
mod volume;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use global::{
    check_myers, euclidean_excess_check, excess_bound, excess_constant, excess_heights,
    hypersurface_distance_check,
};
pub use mean::{
    check_mc_a, check_mc_app_b, check_mc_b, check_mc_basic, check_mc_n, riccati_bound,
    riccati_bound_scaled,
};
pub use rigidity::{run_rigidity_suite, RigidityMode, RigidityVerdict};
pub use volume::{
    check_linear_growth, check_vol_a, check_vol_b, check_vol_basic, growth_constant, GrowthMode,
};

use crate::error::Result;
use crate::numerics::{GridSpec, Spacing, Tolerance};
use crate::space::{verify_bound, BoundKind, CurvatureCertificate, RotSymSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    McBasic,
    McA,
    McB,
    McAppB,
    McN,
    VolBasic,
    VolA,
    VolB,
    LinearGrowth,
    Myers,
    Excess,
    Hypersurface,
    Rigidity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::McBasic,
        TheoremId::McA,
        TheoremId::McB,
        TheoremId::McAppB,
        TheoremId::McN,
        TheoremId::VolBasic,
        TheoremId::VolA,
        TheoremId::VolB,
        TheoremId::LinearGrowth,
        TheoremId::Myers,
        TheoremId::Excess,
        TheoremId::Hypersurface,
        TheoremId::Rigidity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::McBasic => "mc_basic",
            TheoremId::McA => "mc_a",
            TheoremId::McB => "mc_b",
            TheoremId::McAppB => "mc_app_b",
            TheoremId::McN => "mc_n",
            TheoremId::VolBasic => "vol_basic",
            TheoremId::VolA => "vol_a",
            TheoremId::VolB => "vol_b",
            TheoremId::LinearGrowth => "linear_growth",
            TheoremId::Myers => "myers",
            TheoremId::Excess => "excess",
            TheoremId::Hypersurface => "hypersurface",
            TheoremId::Rigidity => "rigidity",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub branch: String,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: Option<f64>,
    pub c: Option<f64>,
    /// Inner radii (r1, R1) of annulus comparisons.
    pub inner: Option<(f64, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Violation threshold (negative).
    pub floor: f64,
}

impl Sample {
    pub fn is_violation(&self) -> bool {
        !(self.margin >= self.floor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub r: f64,
    pub c: f64,
    pub main: f64,
    pub riccati: f64,
    pub main_tighter: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: TheoremId,
    pub space: String,
    pub hypotheses: Vec<CurvatureCertificate>,
    pub grid: Option<GridSpec>,
    pub samples: Vec<Sample>,
    pub min_margin: f64,
    pub violations: Vec<Sample>,
    pub equality_points: Vec<Sample>,
    pub precondition_ok: bool,
    pub falsify: bool,
    pub rigidity: Vec<RigidityVerdict>,
    pub comparisons: Vec<BoundComparison>,
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.precondition_ok && self.violations.is_empty()
    }

    pub fn metric(&self, key: &str) -> Option<f64> {
        self.metrics.get(key).copied()
    }

    /// Smallest margin over samples of one branch.
    pub fn branch_min(&self, branch: &str) -> Option<f64> {
        self.samples
            .iter()
            .filter(|s| s.branch == branch)
            .map(|s| s.margin)
            .reduce(f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub grid_count: usize,
    pub spacing: Spacing,
    pub tol: Tolerance,
    /// |margin| below this counts as equality.
    pub eq_tol: f64,
    /// Consecutive equality samples needed before rigidity is examined.
    pub persistence: usize,
    pub falsify: bool,
    pub cert_count: usize,
    pub rigidity_tol: f64,
    /// Relative violation threshold for volume comparisons.
    pub volume_rel_floor: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            grid_count: 128,
            spacing: Spacing::Uniform,
            tol: Tolerance::default(),
            eq_tol: 1e-8,
            persistence: 5,
            falsify: false,
            cert_count: 512,
            rigidity_tol: 1e-6,
            volume_rel_floor: 1e-6,
        }
    }
}

impl CheckOptions {
    pub fn with_grid(mut self, count: usize) -> Self {
        self.grid_count = count;
        self
    }

    pub fn falsifying(mut self) -> Self {
        self.falsify = true;
        self
    }

    /// Grid of `grid_count` points on [1e-3·upper, upper].
    pub(crate) fn grid(&self, upper: f64) -> Result<GridSpec> {
        GridSpec::new(1e-3 * upper, upper, self.grid_count, self.spacing)
    }
}

/// Fraction of a stated threshold at which grids stop.
pub(crate) const CAP_FRACTION: f64 = 0.999;

/// Upper end of the checked range: min(r_max interior, 0.999·threshold).
pub(crate) fn capped_upper(space: &RotSymSpace, threshold: Option<f64>) -> f64 {
    let inner = space.interior_limit();
    match threshold {
        Some(t) if t.is_finite() => inner.min(CAP_FRACTION * t),
        _ => inner,
    }
}

/// π/(d·√H) for H > 0.
pub(crate) fn h_threshold(h: f64, divisor: f64) -> Option<f64> {
    (h > 0.0).then(|| std::f64::consts::PI / (divisor * h.sqrt()))
}

pub(crate) struct ReportBuilder {
    report: CheckReport,
    opts: CheckOptions,
}

impl ReportBuilder {
    pub fn new(theorem: TheoremId, space: &str, opts: &CheckOptions) -> Self {
        ReportBuilder {
            report: CheckReport {
                theorem,
                space: space.to_string(),
                hypotheses: Vec::new(),
                grid: None,
                samples: Vec::new(),
                min_margin: f64::INFINITY,
                violations: Vec::new(),
                equality_points: Vec::new(),
                precondition_ok: true,
                falsify: opts.falsify,
                rigidity: Vec::new(),
                comparisons: Vec::new(),
                metrics: BTreeMap::new(),
                notes: Vec::new(),
            },
            opts: *opts,
        }
    }

    /// Certifies each hypothesis on [.., r_cap]; returns whether the check
    /// should proceed.
    pub fn certify(
        &mut self,
        space: &RotSymSpace,
        h: f64,
        bounds: &[BoundKind],
        r_cap: Option<f64>,
    ) -> Result<bool> {
        for &b in bounds {
            let mut cert = verify_bound(space, h, b, r_cap, self.opts.cert_count)?;
            cert.margin_floor = self.opts.tol.margin_floor;
            if !cert.is_valid() {
                self.report.precondition_ok = false;
                self.report
                    .notes
                    .push(format!("hypothesis not certified: {}", cert.summary()));
            }
            self.report.hypotheses.push(cert);
        }
        Ok(self.proceed())
    }

    pub fn precondition(&mut self, ok: bool, note: impl Into<String>) -> bool {
        if !ok {
            self.report.precondition_ok = false;
            self.report.notes.push(note.into());
        }
        self.proceed()
    }

    pub fn proceed(&mut self) -> bool {
        let go = self.report.precondition_ok || self.opts.falsify;
        if !self.report.precondition_ok && !self.opts.falsify {
            if !self
                .report
                .notes
                .iter()
                .any(|n| n.starts_with("check skipped"))
            {
                self.report
                    .notes
                    .push("check skipped: precondition failed (enable falsify to evaluate)".into());
            }
        }
        go
    }

    pub fn grid(&mut self, g: GridSpec) {
        self.report.grid = Some(g);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.report.notes.push(s.into());
    }

    pub fn metric(&mut self, key: &str, v: f64) {
        self.report.metrics.insert(key.to_string(), v);
    }

    pub fn compare(&mut self, c: BoundComparison) {
        self.report.comparisons.push(c);
    }

    pub fn rigidity(&mut self, v: RigidityVerdict) {
        self.report.rigidity.push(v);
    }

    pub fn opts(&self) -> &CheckOptions {
        &self.opts
    }

    pub fn samples(&self) -> &[Sample] {
        &self.report.samples
    }

    fn push(&mut self, s: Sample) {
        self.report.samples.push(s);
    }

    /// Pointwise (mean curvature type) sample with the absolute floor.
    pub fn point(&mut self, branch: &str, r: f64, c: Option<f64>, lhs: f64, rhs: f64) {
        let floor = self.opts.tol.margin_floor;
        self.push(Sample {
            branch: branch.to_string(),
            r,
            big_r: None,
            c,
            inner: None,
            lhs,
            rhs,
            margin: rhs - lhs,
            floor,
        });
    }

    /// Volume-type sample with a floor relative to the compared magnitudes.
    pub fn volume(
        &mut self,
        branch: &str,
        r: f64,
        big_r: Option<f64>,
        inner: Option<(f64, f64)>,
        c: Option<f64>,
        lhs: f64,
        rhs: f64,
    ) {
        let floor = -self.opts.volume_rel_floor * lhs.abs().max(rhs.abs());
        self.push(Sample {
            branch: branch.to_string(),
            r,
            big_r,
            c,
            inner,
            lhs,
            rhs,
            margin: rhs - lhs,
            floor,
        });
    }

    /// Runs of at least `persistence` consecutive equality samples sharing a
    /// branch and direction, as (branch, c, r_lo, r_hi).
    pub fn equality_runs(&self, branch: &str) -> Vec<(Option<f64>, f64, f64)> {
        let mut by_c: BTreeMap<u64, Vec<&Sample>> = BTreeMap::new();
        for s in self.report.samples.iter().filter(|s| s.branch == branch) {
            let key = s.c.map(|c| c.to_bits()).unwrap_or(u64::MAX);
            by_c.entry(key).or_default().push(s);
        }
        let mut runs = Vec::new();
        for samples in by_c.values() {
            let mut start: Option<usize> = None;
            for i in 0..=samples.len() {
                let eq = i < samples.len() && samples[i].margin.abs() < self.opts.eq_tol;
                match (eq, start) {
                    (true, None) => start = Some(i),
                    (false, Some(s0)) => {
                        if i - s0 >= self.opts.persistence {
                            runs.push((samples[s0].c, samples[s0].r, samples[i - 1].r));
                        }
                        start = None;
                    }
                    _ => {}
                }
            }
        }
        runs
    }

    pub fn finish(mut self) -> CheckReport {
        let r = &mut self.report;
        r.min_margin = r
            .samples
            .iter()
            .map(|s| s.margin)
            .fold(
                f64::INFINITY,
                |a, b| if b.is_nan() { f64::NAN } else { a.min(b) },
            );
        r.violations = r
            .samples
            .iter()
            .filter(|s| s.is_violation())
            .cloned()
            .collect();
        r.equality_points = r
            .samples
            .iter()
            .filter(|s| s.margin.abs() < self.opts.eq_tol)
            .cloned()
            .collect();
        self.report
    }
}
