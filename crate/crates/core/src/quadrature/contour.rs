//! Trapezoidal rule on the circle `|z| = r` for the contour form of the Stirling sum.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_RADIUS: f64 = 1.0;
pub const MIN_NODES: usize = 8;

/// `max(64, 8(n+1))`.
pub fn default_nodes(n: usize) -> usize {
    64.max(8 * (n + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourResult {
    pub n: usize,
    pub radius: f64,
    pub nodes: usize,
    /// `(2^{n+1} / 2 pi i) oint (1 - q^{n+1}) / ((e^z + 1) z^{n+1}) dz`, `q = -(e^z - 1)/2`.
    pub printed_value: f64,
    /// `n! * printed_value`: the contour integral extracts `[z^n]`, a factor `1/n!`
    /// below the Stirling sum it was built from.
    pub coefficient_scaled: f64,
    /// Roundoff level of `coefficient_scaled`: `64 eps n! max |g(z) z^{-n}|` over the nodes.
    pub rounding_floor: f64,
}

fn integrand(z: Complex64, n: usize) -> Complex64 {
    let ez = z.exp();
    let q = -(ez - 1.0) * 0.5;
    let numer = Complex64::new(1.0, 0.0) - q.powu(n as u32 + 1);
    let scale = 2f64.powi(n as i32 + 1);
    numer * scale / ((ez + 1.0) * z.powu(n as u32))
}

pub fn contour_trapezoid(n: usize, radius: f64, nodes: usize) -> Result<ContourResult> {
    if !(radius > 0.0 && radius < PI) {
        return Err(Error::DivergentParameters { radius });
    }
    if nodes < MIN_NODES {
        return Err(Error::InvalidInput(format!(
            "contour needs at least {MIN_NODES} nodes, got {nodes}"
        )));
    }
    // With dz = i z dθ the integral is the mean of g(z) z^{-n} over the circle.
    // Coefficients are real, so θ and 2π - θ contribute conjugate values.
    let mut peak = 0.0f64;
    let mut at = |j: usize| {
        let theta = 2.0 * PI * j as f64 / nodes as f64;
        let h = integrand(Complex64::from_polar(radius, theta), n);
        peak = peak.max(h.norm());
        h.re
    };
    let mut sum = at(0);
    let half = nodes / 2;
    let paired = if nodes.is_multiple_of(2) { half - 1 } else { half };
    for j in 1..=paired {
        sum += 2.0 * at(j);
    }
    if nodes.is_multiple_of(2) {
        sum += at(half);
    }
    let printed_value = sum / nodes as f64;
    let n_factorial: f64 = (1..=n).map(|k| k as f64).product();
    Ok(ContourResult {
        n,
        radius,
        nodes,
        printed_value,
        coefficient_scaled: printed_value * n_factorial,
        rounding_floor: 64.0 * f64::EPSILON * n_factorial * peak,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_literal_sum_after_factorial() {
        let r3 = contour_trapezoid(3, 1.0, 64).unwrap();
        assert!((r3.coefficient_scaled - 2.0).abs() < 1e-8);
        assert!((r3.printed_value - 2.0 / 6.0).abs() < 1e-9);
        let r2 = contour_trapezoid(2, 1.0, 64).unwrap();
        assert!(r2.coefficient_scaled.abs() < 1e-8);
        let r5 = contour_trapezoid(5, 1.0, 128).unwrap();
        assert!((r5.coefficient_scaled + 16.0).abs() < 1e-7);
    }

    #[test]
    fn odd_node_counts_work() {
        let r = contour_trapezoid(3, 1.0, 65).unwrap();
        assert!((r.coefficient_scaled - 2.0).abs() < 1e-8);
    }

    #[test]
    fn radius_guard() {
        assert!(matches!(
            contour_trapezoid(3, PI, 64),
            Err(Error::DivergentParameters { .. })
        ));
        assert!(contour_trapezoid(3, 0.0, 64).is_err());
        assert!(contour_trapezoid(3, 1.0, 4).is_err());
    }

    #[test]
    fn default_node_rule() {
        assert_eq!(default_nodes(0), 64);
        assert_eq!(default_nodes(10), 88);
    }
}
