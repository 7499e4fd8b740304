//! Semi-infinite integrals with `1/sinh` and `1/cosh` kernels.

use std::f64::consts::PI;

use serde::Serialize;

use super::{integrate_semi_infinite, Decay, QuadratureConfig, QuadratureResult};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`hyper_sinh_literal`].
pub const MAX_SINH_LITERAL_N: usize = 12;
/// Largest zigzag index (`2n` or `2n+1`) for the normalised hyperbolic forms; `A_20 < 1e15`.
pub const MAX_HYPER_INDEX: usize = 20;
/// Largest Mellin exponent `s`.
pub const MAX_MELLIN_S: u32 = 25;

const SERIES_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    Sinh,
    Cosh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Zigzag index `2n` or `2n + 1`.
    pub fn index(self, n: usize) -> usize {
        match self {
            Parity::Even => 2 * n,
            Parity::Odd => 2 * n + 1,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::InvalidInput(format!("unknown parity {other:?}"))),
        }
    }
}

impl std::str::FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sinh" => Ok(Kernel::Sinh),
            "cosh" => Ok(Kernel::Cosh),
            other => Err(Error::InvalidInput(format!("unknown kernel {other:?}"))),
        }
    }
}

/// `u^p / sinh u`, with the series limit `u^{p-1} (1 - u^2/6)` near zero.
pub fn pow_over_sinh(u: f64, p: u32) -> f64 {
    if u < SERIES_LIMIT {
        u.powi(p as i32 - 1) * (1.0 - u * u / 6.0)
    } else {
        u.powi(p as i32) / u.sinh()
    }
}

pub fn pow_over_cosh(u: f64, p: u32) -> f64 {
    u.powi(p as i32) / u.cosh()
}

/// `int_0^inf x^{s-1} / kernel(x) dx`.
pub fn mellin_moment(s: u32, kernel: Kernel, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    if s == 0 || s > MAX_MELLIN_S {
        return Err(Error::InvalidInput(format!(
            "Mellin exponent s = {s} outside [1, {MAX_MELLIN_S}]"
        )));
    }
    match kernel {
        Kernel::Sinh if s == 1 => Err(Error::DivergentIntegral(
            "int_0^inf dx / sinh x diverges logarithmically at 0".into(),
        )),
        Kernel::Sinh => integrate_semi_infinite(|u| pow_over_sinh(u, s - 1), Decay::exp(s - 1), cfg),
        Kernel::Cosh => integrate_semi_infinite(|u| pow_over_cosh(u, s - 1), Decay::exp(s - 1), cfg),
    }
}

/// `(1/pi) int_0^inf y^{2n+1} / sinh(y/2) dy`, as written.
pub fn hyper_sinh_literal(n: usize, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    if n > MAX_SINH_LITERAL_N {
        return Err(Error::RangeExceeded {
            op: "hyper_sinh_literal",
            index: n,
            max: MAX_SINH_LITERAL_N,
        });
    }
    let p = 2 * n as u32 + 1;
    let f = |y: f64| {
        let half = 0.5 * y;
        if half < SERIES_LIMIT {
            2.0 * y.powi(p as i32 - 1) * (1.0 - half * half / 6.0)
        } else {
            y.powi(p as i32) / half.sinh()
        }
    };
    let decay = Decay { power: p, rate: 0.5 };
    Ok(integrate_semi_infinite(f, decay, cfg)?.scaled(1.0 / PI))
}

fn guard(op: &'static str, n: usize, parity: Parity) -> Result<usize> {
    let index = parity.index(n);
    if index > MAX_HYPER_INDEX {
        return Err(Error::RangeExceeded {
            op,
            index,
            max: MAX_HYPER_INDEX,
        });
    }
    Ok(index)
}

fn moment(index: usize, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let kernel = if index.is_multiple_of(2) { Kernel::Cosh } else { Kernel::Sinh };
    mellin_moment(index as u32 + 1, kernel, cfg)
}

/// `4/pi^{2n+1} int x^{2n}/cosh x` (even) and `4/pi^{2n+2} int x^{2n+1}/sinh x` (odd), as written.
pub fn hyper_classical(n: usize, parity: Parity, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let index = guard("hyper_classical", n, parity)?;
    let factor = 4.0 / PI.powi(index as i32 + 1);
    Ok(moment(index, cfg)?.scaled(factor))
}

/// `(2/pi)^{m+1} int_0^inf u^m / kernel(u) du` for `m = 2n` (cosh) or `m = 2n+1` (sinh).
pub fn hyper_calibrated(n: usize, parity: Parity, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let index = guard("hyper_calibrated", n, parity)?;
    let factor = (2.0 / PI).powi(index as i32 + 1);
    Ok(moment(index, cfg)?.scaled(factor))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn sinh_literal_examples() {
        let r0 = hyper_sinh_literal(0, &cfg()).unwrap();
        assert!(rel(r0.value, PI) < 1e-10);
        let r1 = hyper_sinh_literal(1, &cfg()).unwrap();
        assert!(rel(r1.value, 2.0 * PI.powi(3)) < 1e-10);
        let r2 = hyper_sinh_literal(2, &cfg()).unwrap();
        assert!(rel(r2.value / 16.0, PI.powi(5)) < 1e-10);
        assert!(matches!(
            hyper_sinh_literal(13, &cfg()),
            Err(Error::RangeExceeded { .. })
        ));
    }

    #[test]
    fn classical_examples() {
        let odd0 = hyper_classical(0, Parity::Odd, &cfg()).unwrap();
        assert!(rel(odd0.value, 1.0) < 1e-10);
        let odd1 = hyper_classical(1, Parity::Odd, &cfg()).unwrap();
        assert!(rel(odd1.value, 0.5) < 1e-10);
        let even1 = hyper_classical(1, Parity::Even, &cfg()).unwrap();
        assert!(rel(even1.value, 0.5) < 1e-10);
    }

    #[test]
    fn calibrated_examples() {
        let odd1 = hyper_calibrated(1, Parity::Odd, &cfg()).unwrap();
        assert!(rel(odd1.value, 2.0) < 1e-10);
        let even1 = hyper_calibrated(1, Parity::Even, &cfg()).unwrap();
        assert!(rel(even1.value, 1.0) < 1e-10);
        let even0 = hyper_calibrated(0, Parity::Even, &cfg()).unwrap();
        assert!(rel(even0.value, 1.0) < 1e-10);
        assert!(hyper_calibrated(10, Parity::Odd, &cfg()).is_err());
        assert!(hyper_calibrated(10, Parity::Even, &cfg()).is_ok());
    }

    #[test]
    fn mellin_examples() {
        let c1 = mellin_moment(1, Kernel::Cosh, &cfg()).unwrap();
        assert!(rel(c1.value, PI / 2.0) < 1e-10);
        let c3 = mellin_moment(3, Kernel::Cosh, &cfg()).unwrap();
        assert!(rel(c3.value, PI.powi(3) / 8.0) < 1e-10);
        let s2 = mellin_moment(2, Kernel::Sinh, &cfg()).unwrap();
        assert!(rel(s2.value, PI * PI / 4.0) < 1e-10);
        assert!(matches!(
            mellin_moment(1, Kernel::Sinh, &cfg()),
            Err(Error::DivergentIntegral(_))
        ));
        assert!(mellin_moment(26, Kernel::Cosh, &cfg()).is_err());
    }

    #[test]
    fn removable_singularity_is_continuous() {
        let below = pow_over_sinh(0.999e-8, 1);
        let above = pow_over_sinh(1.001e-8, 1);
        assert!((below - above).abs() < 1e-14);
    }
}
