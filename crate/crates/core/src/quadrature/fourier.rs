//! Truncated sine-coefficient integral `(2 n!/pi) int_0^{pi/2 - eps} (sec x + tan x) sin((n+1)x) dx`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::{integrate_finite, QuadratureConfig};
use crate::error::{Error, Result};

/// Normalised increments agreeing to this fraction mark logarithmic growth.
pub const LOG_GROWTH_TOLERANCE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FourierBehavior {
    Convergent {
        extrapolated: f64,
        uncertainty: f64,
    },
    /// `I(eps) ~ coefficient * ln(1/eps)`.
    Divergent {
        law: String,
        coefficient: f64,
        increment_ratio: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierScan {
    pub n: usize,
    pub epsilons: Vec<f64>,
    pub values: Vec<f64>,
    pub behavior: FourierBehavior,
    pub oracle: f64,
    /// Whether the convergent limit equals `A_n` to `1e-6` relative.
    pub matches_oracle: bool,
}

/// `0.2 * 2^{-i}` for `i = 0..14`.
pub fn default_epsilons() -> Vec<f64> {
    (0..14).map(|i| 0.2 * 0.5f64.powi(i)).collect()
}

pub fn fourier_cutoff_scan(n: usize, epsilons: &[f64], oracle: f64) -> Result<FourierScan> {
    let cfg = QuadratureConfig::default().with_rel_tol(1e-13);
    fourier_cutoff_scan_with(n, epsilons, oracle, &cfg)
}

pub fn fourier_cutoff_scan_with(
    n: usize,
    epsilons: &[f64],
    oracle: f64,
    cfg: &QuadratureConfig,
) -> Result<FourierScan> {
    if epsilons.len() < 3 {
        return Err(Error::InvalidInput("the scan needs at least three cutoffs".into()));
    }
    if epsilons.iter().any(|&e| !(e > 0.0 && e < FRAC_PI_2))
        || epsilons.windows(2).any(|w| !(w[1] < w[0]))
    {
        return Err(Error::InvalidInput(
            "cutoffs must be strictly decreasing inside (0, pi/2)".into(),
        ));
    }
    let values = epsilons
        .iter()
        .map(|&eps| truncated_integral(n, eps, cfg))
        .collect::<Result<Vec<_>>>()?;
    let behavior = classify(epsilons, &values);
    let matches_oracle = match &behavior {
        FourierBehavior::Convergent { extrapolated, .. } => {
            ((extrapolated - oracle) / oracle).abs() <= 1e-6
        }
        FourierBehavior::Divergent { .. } => false,
    };
    Ok(FourierScan {
        n,
        epsilons: epsilons.to_vec(),
        values,
        behavior,
        oracle,
        matches_oracle,
    })
}

/// In `t = pi/2 - x`: `sec x + tan x = cot(t/2)`, and the sine factor is expanded
/// with the exact values of `sin`/`cos` at `(n+1) pi/2`.
fn truncated_integral(n: usize, eps: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let m = (n + 1) as f64;
    let (sin_a, cos_a) = match (n + 1) % 4 {
        0 => (0.0, 1.0),
        1 => (1.0, 0.0),
        2 => (0.0, -1.0),
        _ => (-1.0, 0.0),
    };
    let f = |t: f64| {
        let s = sin_a * (m * t).cos() - cos_a * (m * t).sin();
        s / (0.5 * t).tan()
    };
    let mut breaks = vec![eps];
    while breaks.last().unwrap() * 2.0 < FRAC_PI_2 {
        let next = breaks.last().unwrap() * 2.0;
        breaks.push(next);
    }
    breaks.push(FRAC_PI_2);
    let integral = integrate_finite(f, &breaks, cfg)?;
    let n_factorial: f64 = (1..=n).map(|k| k as f64).product();
    Ok(2.0 * n_factorial / PI * integral.value)
}

fn classify(eps: &[f64], values: &[f64]) -> FourierBehavior {
    let k = eps.len();
    let rate = |i: usize| (values[i + 1] - values[i]) / (eps[i] / eps[i + 1]).ln();
    let last = rate(k - 2);
    let prev = rate(k - 3);
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let ratio = last / prev;
    if last.abs() > 1e-9 * scale && (ratio - 1.0).abs() < LOG_GROWTH_TOLERANCE {
        return FourierBehavior::Divergent {
            law: "logarithmic".into(),
            coefficient: last,
            increment_ratio: ratio,
        };
    }
    let take = k.min(4);
    let best = neville_at_zero(&eps[k - take..], &values[k - take..]);
    let lower = neville_at_zero(&eps[k - take + 1..], &values[k - take + 1..]);
    FourierBehavior::Convergent {
        extrapolated: best,
        uncertainty: (best - lower).abs(),
    }
}

/// Polynomial interpolation through `(x_i, y_i)` evaluated at `x = 0`.
fn neville_at_zero(x: &[f64], y: &[f64]) -> f64 {
    let mut p = y.to_vec();
    let len = x.len();
    for level in 1..len {
        for i in 0..len - level {
            let j = i + level;
            p[i] = (x[j] * p[i] - x[i] * p[i + 1]) / (x[j] - x[i]);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_converges_to_one_plus_four_over_pi() {
        let scan = fourier_cutoff_scan(1, &default_epsilons(), 1.0).unwrap();
        match scan.behavior {
            FourierBehavior::Convergent { extrapolated, .. } => {
                assert!((extrapolated - (1.0 + 4.0 / PI)).abs() < 1e-6, "{extrapolated}");
            }
            other => panic!("{other:?}"),
        }
        assert!(!scan.matches_oracle);
    }

    #[test]
    fn n0_diverges_logarithmically() {
        let scan = fourier_cutoff_scan(0, &default_epsilons(), 1.0).unwrap();
        match scan.behavior {
            FourierBehavior::Divergent {
                coefficient,
                increment_ratio,
                ..
            } => {
                assert!((increment_ratio - 1.0).abs() < 0.1);
                // integrand ~ 2/t, prefactor 2/pi
                assert!((coefficient - 4.0 / PI).abs() < 1e-3, "{coefficient}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn n3_converges() {
        let scan = fourier_cutoff_scan(3, &default_epsilons(), 2.0).unwrap();
        assert!(matches!(scan.behavior, FourierBehavior::Convergent { .. }));
    }

    #[test]
    fn rejects_bad_cutoffs() {
        assert!(fourier_cutoff_scan(1, &[0.1, 0.2, 0.05], 1.0).is_err());
        assert!(fourier_cutoff_scan(1, &[2.0, 0.1, 0.05], 1.0).is_err());
        assert!(fourier_cutoff_scan(1, &[0.1, 0.05], 1.0).is_err());
    }

    #[test]
    fn neville_recovers_polynomials() {
        let x = [0.4, 0.2, 0.1, 0.05];
        let y: Vec<f64> = x.iter().map(|t| 3.0 - 2.0 * t + t * t * t).collect();
        assert!((neville_at_zero(&x, &y) - 3.0).abs() < 1e-12);
    }
}
