//! Gamma function and unit-sphere measures for real (possibly fractional)
//! dimensions.

use std::f64::consts::PI;

/// Γ(x) for x > 0.
///
/// Integers and half-integers up to 170 go through the exact recurrence from
/// Γ(1) = 1 and Γ(1/2) = √π; every other argument uses the Lanczos
/// approximation from `statrs`.
pub fn gamma(x: f64) -> f64 {
    let twice = 2.0 * x;
    if x > 0.0 && x <= 170.0 && twice == twice.round() {
        let (mut acc, mut t) = if twice as i64 % 2 == 0 {
            (1.0, 1.0)
        } else {
            (PI.sqrt(), 0.5)
        };
        while t < x {
            acc *= t;
            t += 1.0;
        }
        acc
    } else {
        statrs::function::gamma::gamma(x)
    }
}

/// Surface measure ω of the unit sphere S^{n-1} ⊂ ℝⁿ, i.e. 2π^{n/2}/Γ(n/2).
///
/// `n` may be fractional (model spaces of dimension n + 4k).
pub fn sphere_measure(n: f64) -> f64 {
    2.0 * PI.powf(0.5 * n) / gamma(0.5 * n)
}
