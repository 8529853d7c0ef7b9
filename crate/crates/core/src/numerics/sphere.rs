//! Averaging over the direction sphere S^{n-1} through the marginal of the
//! cosine c = ⟨θ, e⟩ against a fixed axis e.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::special::{gamma, sphere_measure};

/// Fixed Gauss–Jacobi order used for direction averages.
pub const DIRECTION_ORDER: usize = 64;

/// Gauss–Jacobi rule for ∫_{-1}^{1} g(x) (1-x)^α (1+x)^β dx.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl GaussJacobi {
    /// Golub–Welsch construction from the Jacobi three-term recurrence.
    pub fn new(order: usize, alpha: f64, beta: f64) -> Self {
        assert!(order >= 1, "Gauss-Jacobi order must be positive");
        assert!(
            alpha > -1.0 && beta > -1.0,
            "Jacobi exponents must exceed -1"
        );
        let ab = alpha + beta;
        let mut jm = DMatrix::<f64>::zeros(order, order);
        for k in 0..order {
            let kf = k as f64;
            let diag = if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
            };
            jm[(k, k)] = diag;
            if k + 1 < order {
                let j = kf + 1.0;
                let off2 = if k == 0 {
                    4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
                } else {
                    4.0 * j * (j + alpha) * (j + beta) * (j + ab)
                        / ((2.0 * j + ab).powi(2) * (2.0 * j + ab + 1.0) * (2.0 * j + ab - 1.0))
                };
                let off = off2.sqrt();
                jm[(k, k + 1)] = off;
                jm[(k + 1, k)] = off;
            }
        }
        let mu0 = 2f64.powf(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0);
        let eig = SymmetricEigen::new(jm);
        let mut pairs: Vec<(f64, f64)> = (0..order)
            .map(|i| {
                let v0 = eig.eigenvectors[(0, i)];
                (eig.eigenvalues[i], mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        if alpha == beta {
            // Symmetric weight: enforce exact mirror symmetry of the rule.
            for i in 0..order / 2 {
                let j = order - 1 - i;
                let x = 0.5 * (pairs[j].0 - pairs[i].0);
                let w = 0.5 * (pairs[i].1 + pairs[j].1);
                pairs[i] = (-x, w);
                pairs[j] = (x, w);
            }
            if order % 2 == 1 {
                pairs[order / 2].0 = 0.0;
            }
        }
        GaussJacobi {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
            alpha,
            beta,
        }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// Direction-cosine nodes with weights that already include the ω_{n-2}
/// factor, so that Σ wᵢ g(cᵢ) ≈ ∫_{S^{n-1}} g(⟨θ, e⟩) dθ.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionRule {
    pub dimension: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl DirectionRule {
    pub fn new(dimension: usize) -> Self {
        Self::with_order(dimension, DIRECTION_ORDER)
    }

    pub fn with_order(dimension: usize, order: usize) -> Self {
        assert!(dimension >= 2, "direction sphere needs n >= 2");
        let exponent = 0.5 * (dimension as f64 - 3.0);
        let rule = GaussJacobi::new(order, exponent, exponent);
        // n = 2: ω_0 = 2 counts the two points of S^0.
        let omega = sphere_measure(dimension as f64 - 1.0);
        DirectionRule {
            dimension,
            nodes: rule.nodes,
            weights: rule.weights.into_iter().map(|w| w * omega).collect(),
        }
    }

    pub fn average<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| w * g(c))
            .sum()
    }
}

/// ∫_{S^{n-1}} g(⟨θ, e⟩) dθ.
pub fn sphere_average<F: Fn(f64) -> f64>(g: F, n: usize) -> f64 {
    DirectionRule::new(n).average(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_integrates_to_sphere_area() {
        for n in 2..=7 {
            let area = sphere_average(|_| 1.0, n);
            assert!(
                (area - sphere_measure(n as f64)).abs() < 1e-12 * area,
                "n = {n}"
            );
        }
        assert!((sphere_average(|_| 1.0, 3) - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn odd_functions_vanish() {
        for n in 2..=7 {
            assert!(sphere_average(|c| c, n).abs() < 1e-14);
            assert!(sphere_average(|c| c * c * c, n).abs() < 1e-14);
        }
    }

    #[test]
    fn legendre_rule_reproduces_known_nodes() {
        let g = GaussJacobi::new(2, 0.0, 0.0);
        let x = 1.0 / 3f64.sqrt();
        assert!((g.nodes[0] + x).abs() < 1e-14);
        assert!((g.nodes[1] - x).abs() < 1e-14);
        assert!((g.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_jacobi_weights_sum_to_moment() {
        let g = GaussJacobi::new(12, 0.5, -0.3);
        let mu0 = 2f64.powf(1.2) * gamma(1.5) * gamma(0.7) / gamma(2.2);
        let s: f64 = g.weights.iter().sum();
        assert!((s - mu0).abs() < 1e-13);
    }
}
