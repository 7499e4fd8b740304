use std::f64::consts::PI;

use proptest::prelude::*;

use zigzag_core::exact::zigzag_entringer;
use zigzag_core::quadrature::{
    contour_trapezoid, hyper_calibrated, integrate_semi_infinite, mellin_moment, Decay, Kernel,
    Parity, QuadratureConfig,
};
use zigzag_core::representations::Representations;
use zigzag_core::spectral::{
    dirichlet_beta_terms, half_integer_zeta, half_integer_zeta_terms, spectral_series_calibrated,
};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `int p(u) e^{-u} du = sum c_k k!` for small integer polynomials of degree <= 8.
    #[test]
    fn engine_reproduces_moments(coeffs in prop::collection::vec(-5i32..=5, 1..=9)) {
        let poly = |u: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c as f64);
        let degree = coeffs.len() as u32 - 1;
        let mut fact = 1.0;
        let mut exact = 0.0;
        let mut scale = 0.0;
        for (k, &c) in coeffs.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            exact += c as f64 * fact;
            scale += (c as f64).abs() * fact;
        }
        let cfg = QuadratureConfig::default();
        let q = integrate_semi_infinite(|u| poly(u) * (-u).exp(), Decay::exp(degree), &cfg).unwrap();
        prop_assert!((q.value - exact).abs() <= 1e-12 * scale.max(1.0), "{} vs {}", q.value, exact);
    }
}

#[test]
fn closed_form_integrals() {
    let cfg = QuadratureConfig::default();
    let cosh1 = mellin_moment(1, Kernel::Cosh, &cfg).unwrap();
    assert!(rel(cosh1.value, PI / 2.0) <= 1e-10);
    let sinh2 = mellin_moment(2, Kernel::Sinh, &cfg).unwrap();
    assert!(rel(sinh2.value, PI * PI / 4.0) <= 1e-10);
    let cosh3 = mellin_moment(3, Kernel::Cosh, &cfg).unwrap();
    assert!(rel(cosh3.value, PI.powi(3) / 8.0) <= 1e-10);
    assert!(cosh3.evaluations > 0 && cosh3.error_estimate >= 0.0);
}

#[test]
fn contour_matches_literal_and_converges() {
    let reps = Representations::new(8);
    for n in 0..=8 {
        let literal: f64 = reps.stirling_sum_literal(n).unwrap().to_string().parse().unwrap();
        let at_64 = contour_trapezoid(n, 1.0, 64).unwrap();
        let at_128 = contour_trapezoid(n, 1.0, 128).unwrap();
        let r64 = (at_64.coefficient_scaled - literal).abs();
        let r128 = (at_128.coefficient_scaled - literal).abs();
        assert!(r128 <= 1e-7 * literal.abs().max(1.0), "n={n} residual {r128:e}");
        assert!(r128 * 1e3 <= r64 || r128 <= at_128.rounding_floor, "n={n}");
    }
    assert!(contour_trapezoid(3, PI, 64).is_err());
    assert!(contour_trapezoid(3, 1.0, 4).is_err());
}

/// Plain zeta partial sum with an integral tail bracket, independent of the
/// Euler–Maclaurin path.
fn zeta_reference(s: u32) -> f64 {
    let m = 200_000u64;
    let sum: f64 = (1..=m).rev().map(|k| (k as f64).powi(-(s as i32))).sum();
    let sf = s as f64;
    // midpoint of the bracket [int_{m+1}, int_m]
    let lo = ((m + 1) as f64).powf(1.0 - sf) / (sf - 1.0);
    let hi = (m as f64).powf(1.0 - sf) / (sf - 1.0);
    sum + 0.5 * (lo + hi)
}

#[test]
fn half_zeta_against_independent_zeta() {
    for s in 2..=12u32 {
        let h = half_integer_zeta(s, 1e-13).unwrap().value;
        let z = 2f64.powi(s as i32) * (1.0 - 2f64.powi(-(s as i32))) * zeta_reference(s);
        assert!(rel(h, z) <= 1e-10, "s={s}: {h} vs {z}");
    }
}

#[test]
fn tail_bounds_are_true_bounds() {
    for s in [2u32, 3, 5, 8, 12, 20, 26] {
        for terms in [8usize, 16, 64] {
            let a = half_integer_zeta_terms(s, terms).unwrap();
            let b = half_integer_zeta_terms(s, 4 * terms).unwrap();
            assert!((a.value - b.value).abs() <= a.tail_bound, "zeta s={s} terms={terms}");
            assert!(b.tail_bound <= a.tail_bound);
        }
    }
    for s in [1u32, 2, 3, 5, 9] {
        for direct in [0usize, 8, 32] {
            let a = dirichlet_beta_terms(s, direct).unwrap();
            let b = dirichlet_beta_terms(s, 4 * direct + 8).unwrap();
            assert!((a.value - b.value).abs() <= a.tail_bound, "beta s={s} direct={direct}");
        }
    }
}

#[test]
fn spectral_and_quadrature_agree() {
    let cfg = QuadratureConfig::default();
    for n in 0..=9 {
        let series = spectral_series_calibrated(n).unwrap();
        let quad = hyper_calibrated(n, Parity::Odd, &cfg).unwrap().value;
        assert!(rel(series, quad) <= 1e-8, "n={n}");
    }
}

#[test]
fn calibrated_forms_track_oracle() {
    let cfg = QuadratureConfig::default();
    let oracle = zigzag_entringer(20);
    for idx in 0..=19 {
        let parity = if idx % 2 == 0 { Parity::Even } else { Parity::Odd };
        let q = hyper_calibrated(idx / 2, parity, &cfg).unwrap().value;
        let a: f64 = oracle.get(idx).to_string().parse().unwrap();
        assert!(rel(q, a) <= 1e-9, "idx={idx}");
    }
}
