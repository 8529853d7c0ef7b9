//! Comparison geometry for the Bakry–Emery Ricci tensor on rotationally
//! symmetric smooth metric measure spaces.
//!
//! A space is a warp φ and a weight f on `dr² + φ(r)² g_S`, carrying the
//! measure `e^{-f} dvol`. The [`space`] module evaluates weighted curvature,
//! mean curvature and volume; [`theorems`] checks comparison inequalities on
//! grids and reports margins.

pub mod error;
pub mod expr;
pub mod model;
pub mod numerics;
pub mod profile;
pub mod space;
pub mod spec;
pub mod special;
pub mod spline;
pub mod theorems;

pub use error::{Error, Result};
pub use model::{mean_curvature_model, sn, vol_model, vol_model_weighted, ModelParams};
pub use numerics::{GridSpec, Spacing, Tolerance};
pub use profile::{Jet, Profile, ProfileKind, RadialProfile};
pub use space::{
    builtin, generate_space, verify_bound, BoundKind, CurvatureCertificate, DirectionalWeight,
    GeneratorConfig, GeneratorMode, RotSymSpace,
};
pub use spec::{BuiltSpace, SpaceSpec};
pub use theorems::{CheckOptions, CheckReport, Sample, TheoremId};
