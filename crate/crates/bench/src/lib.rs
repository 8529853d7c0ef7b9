//! Workloads shared by the benchmarks.

use std::collections::BTreeMap;

use ricf_core::space::{generate_space, GeneratorConfig, GeneratorMode};
use ricf_core::{builtin, Result, RotSymSpace};

pub fn named(name: &str, n: usize, kv: &[(&str, f64)]) -> Result<RotSymSpace> {
    let p: BTreeMap<String, f64> = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    builtin(name, n, &p)
}

/// A seeded bounded-weight space on flat background.
pub fn generated(seed: u64) -> Result<RotSymSpace> {
    Ok(generate_space(&GeneratorConfig::new(
        3,
        0.0,
        GeneratorMode::FBounded { k: 0.2 },
        seed,
    ))?
    .space)
}
