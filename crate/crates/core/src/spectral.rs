//! Series side of the half-integer spectrum: `sum (m + 1/2)^{-s}`, Dirichlet beta,
//! the spectral series for `A_{2n+1}` and two-sided Mellin checks.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{mellin_moment, Kernel, QuadratureConfig};

/// Tolerance used when a series feeds another computation.
pub const SERIES_REL_TOL: f64 = 1e-13;
/// Terms in the Euler-transform window for alternating tails.
pub const EULER_WINDOW: usize = 30;
/// Mellin two-sided checks pass at this relative deviation.
pub const MELLIN_TOLERANCE: f64 = 1e-8;
pub const MAX_SPECTRAL_N: usize = 12;
pub const MAX_MELLIN_CHECK_S: u32 = 20;

const MAX_DIRECT_TERMS: usize = 1 << 22;
const ROUNDING_SLACK: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// Compensated (Neumaier) running sum.
#[derive(Default)]
struct Accumulator {
    sum: f64,
    carry: f64,
}

impl Accumulator {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

// B_2, B_4, B_6, B_8 divided by the matching factorials.
const EM_COEFFS: [f64; 4] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
];

/// `sum_{m>=0} (m + 1/2)^{-s}` with `terms` direct terms and an Euler–Maclaurin
/// tail through `B_6`; the `B_8` term bounds the remainder.
pub fn half_integer_zeta_terms(s: u32, terms: usize) -> Result<SeriesValue> {
    if s < 2 {
        return Err(Error::InvalidInput(format!(
            "half-integer zeta needs s >= 2, got {s}"
        )));
    }
    let s_f = s as f64;
    let f = |x: f64| (x + 0.5).powf(-s_f);
    let mut acc = Accumulator::default();
    for m in 0..terms {
        acc.add(f(m as f64));
    }
    let x = terms as f64 + 0.5;
    acc.add(x.powf(1.0 - s_f) / (s_f - 1.0));
    acc.add(0.5 * f(terms as f64));
    // f^{(2j-1)}(x) = -(s)_{2j-1} x^{-s-2j+1}
    let mut rising = s_f;
    let mut power = x.powf(-s_f - 1.0);
    let mut next_term = 0.0;
    for (j, c) in EM_COEFFS.iter().enumerate() {
        let derivative = -rising * power;
        if j + 1 < EM_COEFFS.len() {
            acc.add(-c * derivative);
            let k = (2 * j + 1) as f64;
            rising *= (s_f + k) * (s_f + k + 1.0);
            power /= x * x;
        } else {
            next_term = (c * derivative).abs();
        }
    }
    let first = f(0.0);
    Ok(SeriesValue {
        value: acc.total(),
        terms_used: terms,
        tail_bound: 2.0 * next_term + ROUNDING_SLACK * first,
    })
}

pub fn half_integer_zeta(s: u32, rel_tol: f64) -> Result<SeriesValue> {
    let mut terms = (s as usize).max(8);
    loop {
        let v = half_integer_zeta_terms(s, terms)?;
        if v.tail_bound < rel_tol * v.value.abs() || terms >= MAX_DIRECT_TERMS {
            return Ok(v);
        }
        terms *= 2;
    }
}

/// `beta(s) = sum_k (-1)^k (2k+1)^{-s}` from `direct` plain terms followed by a
/// 30-term Euler transform of the alternating tail. The last transformed term
/// bounds the remainder for completely monotone terms.
pub fn dirichlet_beta_terms(s: u32, direct: usize) -> Result<SeriesValue> {
    if s < 1 {
        return Err(Error::InvalidInput("Dirichlet beta needs s >= 1".into()));
    }
    let s_f = s as f64;
    let term = |k: usize| ((2 * k + 1) as f64).powf(-s_f);
    let mut acc = Accumulator::default();
    for k in 0..direct {
        let t = term(k);
        acc.add(if k % 2 == 0 { t } else { -t });
    }
    let mut diffs: Vec<f64> = (0..EULER_WINDOW).map(|j| term(direct + j)).collect();
    let sign = if direct.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut scale = 0.5;
    let mut last = 0.0;
    for d in 0..EULER_WINDOW {
        // diffs[0] holds the d-th forward difference of the tail terms
        let contribution = if d % 2 == 0 { diffs[0] } else { -diffs[0] } * scale;
        acc.add(sign * contribution);
        last = contribution.abs();
        for i in 0..EULER_WINDOW - d - 1 {
            diffs[i] = diffs[i + 1] - diffs[i];
        }
        scale *= 0.5;
    }
    Ok(SeriesValue {
        value: acc.total(),
        terms_used: direct + EULER_WINDOW,
        tail_bound: last + ROUNDING_SLACK,
    })
}

pub fn dirichlet_beta(s: u32, rel_tol: f64) -> Result<SeriesValue> {
    let mut direct = 0usize;
    loop {
        let v = dirichlet_beta_terms(s, direct)?;
        if v.tail_bound < rel_tol * v.value.abs() || direct >= MAX_DIRECT_TERMS {
            return Ok(v);
        }
        direct = if direct == 0 { 8 } else { direct * 2 };
    }
}

fn guard_spectral(op: &'static str, n: usize) -> Result<()> {
    if n > MAX_SPECTRAL_N {
        Err(Error::RangeExceeded {
            op,
            index: n,
            max: MAX_SPECTRAL_N,
        })
    } else {
        Ok(())
    }
}

fn odd_factorial(n: usize) -> f64 {
    (1..=2 * n + 1).map(|k| k as f64).product()
}

/// `(2n+1)! (2/pi) sum_m (m + 1/2)^{-(2n+2)}`, as written.
pub fn spectral_series_literal(n: usize) -> Result<f64> {
    guard_spectral("spectral_series_literal", n)?;
    let h = half_integer_zeta(2 * n as u32 + 2, SERIES_REL_TOL)?;
    Ok(odd_factorial(n) * (2.0 / PI) * h.value)
}

/// `(2n+1)! (2 / pi^{2n+2}) sum_m (m + 1/2)^{-(2n+2)}`.
pub fn spectral_series_calibrated(n: usize) -> Result<f64> {
    guard_spectral("spectral_series_calibrated", n)?;
    let h = half_integer_zeta(2 * n as u32 + 2, SERIES_REL_TOL)?;
    Ok(odd_factorial(n) * 2.0 / PI.powi(2 * n as i32 + 2) * h.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MellinCheck {
    pub s: u32,
    pub kernel: Kernel,
    pub quadrature: f64,
    pub series: f64,
    pub rel_deviation: f64,
    pub passes: bool,
}

/// Quadrature of `int x^{s-1}/kernel(x) dx` against its series closed form:
/// `2 (s-1)! beta(s)` for cosh, `2 (s-1)! (1 - 2^{-s}) zeta(s) = 2 (s-1)! H(s) / 2^s` for sinh.
pub fn mellin_identity_check(s: u32, kernel: Kernel, cfg: &QuadratureConfig) -> Result<MellinCheck> {
    if s == 0 || s > MAX_MELLIN_CHECK_S {
        return Err(Error::InvalidInput(format!(
            "Mellin check needs s in [1, {MAX_MELLIN_CHECK_S}], got {s}"
        )));
    }
    let quadrature = mellin_moment(s, kernel, cfg)?.value;
    let gamma: f64 = (1..s).map(|k| k as f64).product();
    let series = match kernel {
        Kernel::Cosh => 2.0 * gamma * dirichlet_beta(s, SERIES_REL_TOL)?.value,
        Kernel::Sinh => {
            2.0 * gamma * half_integer_zeta(s, SERIES_REL_TOL)?.value / 2f64.powi(s as i32)
        }
    };
    let rel_deviation = ((quadrature - series) / series).abs();
    Ok(MellinCheck {
        s,
        kernel,
        quadrature,
        series,
        rel_deviation,
        passes: rel_deviation <= MELLIN_TOLERANCE,
    })
}
