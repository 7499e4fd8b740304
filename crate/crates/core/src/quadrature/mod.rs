//! Double-precision quadrature: an adaptive composite Gauss–Legendre engine for
//! finite and semi-infinite intervals, and the integral representations built on it.

// `!(a < b)` is used on purpose so NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod contour;
mod fourier;
pub mod gauss;
mod hyperbolic;

pub use contour::{contour_trapezoid, default_nodes, ContourResult, DEFAULT_RADIUS};
pub use fourier::{
    default_epsilons, fourier_cutoff_scan, fourier_cutoff_scan_with, FourierBehavior, FourierScan,
};
pub use hyperbolic::{
    hyper_calibrated, hyper_classical, hyper_sinh_literal, mellin_moment, pow_over_cosh,
    pow_over_sinh, Kernel, Parity, MAX_HYPER_INDEX, MAX_SINH_LITERAL_N,
};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "strategy", content = "cutoff")]
pub enum Truncation {
    TailBound,
    FixedCutoff(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
    pub truncation: Truncation,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_depth: 40,
            truncation: Truncation::TailBound,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        if self.max_depth < 1 {
            return Err(Error::InvalidInput("max_depth must be at least 1".into()));
        }
        if let Truncation::FixedCutoff(u) = self.truncation {
            if !(u > 0.0 && u.is_finite()) {
                return Err(Error::InvalidInput("fixed cutoff must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    /// Upper truncation point; the right endpoint for finite intervals.
    pub cutoff: f64,
}

impl QuadratureResult {
    pub(crate) fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.error_estimate *= factor.abs();
        self
    }
}

/// Envelope `|f(u)| <~ 2 u^power e^{-rate u}` used to place the truncation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decay {
    pub power: u32,
    pub rate: f64,
}

impl Decay {
    pub fn exp(power: u32) -> Self {
        Self { power, rate: 1.0 }
    }

    /// `ln( 2 int_U^inf u^k e^{-rate u} du )`, using the closed form of the
    /// upper incomplete gamma function at integer order.
    pub fn log_tail(&self, upper: f64) -> f64 {
        let k = self.power as usize;
        let x = self.rate * upper;
        // ln sum_{j<=k} x^j / j!, accumulated in log space
        let mut log_term = 0.0f64;
        let mut log_sum = 0.0f64;
        for j in 1..=k {
            log_term += x.ln() - (j as f64).ln();
            let (hi, lo) = if log_term > log_sum {
                (log_term, log_sum)
            } else {
                (log_sum, log_term)
            };
            log_sum = hi + (lo - hi).exp().ln_1p();
        }
        let log_fact: f64 = (1..=k).map(|j| (j as f64).ln()).sum();
        std::f64::consts::LN_2 + log_fact - x + log_sum - (k as f64 + 1.0) * self.rate.ln()
    }
}

/// Truncation point never exceeds `SEMI_INFINITE_CAP / rate`.
pub const SEMI_INFINITE_CAP: f64 = 200.0;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    depth: u32,
    coarse: f64,
    fine: f64,
    /// Estimate of `int |f|` over the panel.
    mass: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Self {
        let mid = 0.5 * (a + b);
        let coarse = gauss::panel(f, a, b);
        let (left, left_mass) = gauss::panel_with_abs(f, a, mid);
        let (right, right_mass) = gauss::panel_with_abs(f, mid, b);
        Self {
            a,
            b,
            depth,
            coarse,
            fine: left + right,
            mass: left_mass + right_mass,
        }
    }

    fn error(&self) -> f64 {
        (self.fine - self.coarse).abs()
    }
}

const EVALS_PER_PANEL: u64 = 3 * gauss::POINTS as u64;

/// Panel errors below this multiple of `eps * int |f|` are rounding noise.
const ROUNDOFF_FACTOR: f64 = 100.0 * f64::EPSILON;

/// Error target: relative to the value, floored by `abs_tol` and by rounding on `int |f|`.
fn target(cfg: &QuadratureConfig, value: f64, mass: f64) -> f64 {
    (cfg.rel_tol * value.abs())
        .max(cfg.abs_tol)
        .max(ROUNDOFF_FACTOR * mass)
}

/// Adaptive bisection over a set of panels. Totals are summed in left-to-right
/// panel order so the result does not depend on refinement order.
struct Adaptive<'f, F> {
    f: &'f F,
    panels: Vec<Panel>,
    evaluations: u64,
}

impl<'f, F: Fn(f64) -> f64> Adaptive<'f, F> {
    fn new(f: &'f F) -> Self {
        Self {
            f,
            panels: Vec::new(),
            evaluations: 0,
        }
    }

    fn add(&mut self, a: f64, b: f64) {
        self.panels.push(Panel::new(self.f, a, b, 0));
        self.evaluations += EVALS_PER_PANEL;
    }

    /// `(value, error, mass)`.
    fn totals(&mut self) -> (f64, f64, f64) {
        self.panels
            .sort_by(|p, q| p.a.partial_cmp(&q.a).expect("panel endpoints are finite"));
        let value = self.panels.iter().map(|p| p.fine).sum();
        let error = self.panels.iter().map(Panel::error).sum();
        let mass = self.panels.iter().map(|p| p.mass).sum();
        (value, error, mass)
    }

    /// Refines until the summed panel error meets the tolerance. Returns false
    /// when every offending panel has hit `max_depth`.
    fn refine(&mut self, cfg: &QuadratureConfig) -> bool {
        loop {
            let (value, error, mass) = self.totals();
            if !value.is_finite() {
                return false;
            }
            if error <= target(cfg, value, mass) {
                return true;
            }
            let worst = self
                .panels
                .iter()
                .enumerate()
                .filter(|(_, p)| p.depth < cfg.max_depth)
                .max_by(|(_, p), (_, q)| p.error().total_cmp(&q.error()))
                .map(|(i, _)| i);
            let Some(i) = worst else { return false };
            let p = self.panels.swap_remove(i);
            let mid = 0.5 * (p.a + p.b);
            self.panels.push(Panel::new(self.f, p.a, mid, p.depth + 1));
            self.panels.push(Panel::new(self.f, mid, p.b, p.depth + 1));
            self.evaluations += 2 * EVALS_PER_PANEL;
        }
    }
}

/// Adaptive composite Gauss–Legendre on `[a, b]` with the given initial breakpoints.
pub fn integrate_finite<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    cfg.validate()?;
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidInput(
            "breakpoints must be strictly increasing with at least two entries".into(),
        ));
    }
    let mut engine = Adaptive::new(&f);
    for w in breakpoints.windows(2) {
        engine.add(w[0], w[1]);
    }
    let ok = engine.refine(cfg);
    let (value, error, _) = engine.totals();
    let result = QuadratureResult {
        value,
        error_estimate: error,
        evaluations: engine.evaluations,
        cutoff: *breakpoints.last().unwrap(),
    };
    if ok {
        Ok(result)
    } else {
        Err(Error::ToleranceNotReached(Box::new(result)))
    }
}

/// `int_0^inf f(u) du` for `f` bounded by `2 u^k e^{-rate u}` at large `u`.
///
/// Panels start dyadic on `[0, U]`; `U` doubles until the incomplete-gamma tail
/// bound drops below `rel_tol` times the running estimate, capped at `200 / rate`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    decay: Decay,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    cfg.validate()?;
    if !(decay.rate > 0.0) {
        return Err(Error::InvalidInput("decay rate must be positive".into()));
    }
    let scale = 1.0 / decay.rate;
    let cap = SEMI_INFINITE_CAP * scale;
    let mut engine = Adaptive::new(&f);

    let (mut upper, fixed) = match cfg.truncation {
        Truncation::FixedCutoff(u) => (u, true),
        Truncation::TailBound => ((2.0 * (decay.power as f64 + 1.0)).max(8.0) * scale, false),
    };
    if !fixed {
        upper = upper.min(cap);
    }
    let mut left = 0.0;
    let mut right = scale.min(upper);
    while left < upper {
        engine.add(left, right);
        left = right;
        right = (2.0 * right).min(upper);
    }

    let mut ok = engine.refine(cfg);
    let mut tail = 0.0;
    if !fixed {
        loop {
            let (value, _, mass) = engine.totals();
            let log_tail = decay.log_tail(upper);
            tail = log_tail.exp();
            if log_tail <= target(cfg, value, mass).ln() || upper >= cap {
                break;
            }
            let next = (2.0 * upper).min(cap);
            engine.add(upper, next);
            upper = next;
            ok = engine.refine(cfg);
        }
    }
    let (value, error, _) = engine.totals();
    let result = QuadratureResult {
        value,
        error_estimate: error + tail,
        evaluations: engine.evaluations,
        cutoff: upper,
    };
    if ok {
        Ok(result)
    } else {
        Err(Error::ToleranceNotReached(Box::new(result)))
    }
}
