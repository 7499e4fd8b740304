//! Leading-order law `A_n ~ (4/pi) (2/pi)^n n!` and its error against the exact values.

use std::f64::consts::{LN_2, PI};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, ZigzagTable};

/// Working precision (bits) for the fixed-point ratio.
const FIXED_BITS: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticRow {
    pub n: usize,
    pub estimate_log: f64,
    pub exact_log: f64,
    /// `|estimate / A_n - 1|`.
    pub rel_error: f64,
}

/// `ln(4/pi) + n ln(2/pi) + ln n!`.
pub fn asymptotic_estimate_log(n: usize) -> f64 {
    let log_factorial: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    (4.0 / PI).ln() + n as f64 * (2.0 / PI).ln() + log_factorial
}

/// Natural log of a positive big integer from its bit length and top 64 bits.
pub fn big_ln(value: &BigInt) -> f64 {
    assert!(value.sign() == Sign::Plus, "log of a non-positive integer");
    let bits = value.bits();
    if bits <= 64 {
        return (value.magnitude().iter_u64_digits().next().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 64;
    let top = value.magnitude() >> shift;
    let mantissa = top.iter_u64_digits().next().unwrap_or(0) as f64;
    mantissa.ln() + shift as f64 * LN_2
}

/// Big integer to `f64` with correct exponent for any magnitude that fits.
fn big_to_f64(value: &BigInt) -> f64 {
    let bits = value.bits();
    let mag = if bits <= 64 {
        value.magnitude().iter_u64_digits().next().unwrap_or(0) as f64
    } else {
        let shift = bits - 64;
        let top = value.magnitude() >> shift;
        (top.iter_u64_digits().next().unwrap_or(0) as f64) * 2f64.powi(shift as i32)
    };
    if value.is_negative() {
        -mag
    } else {
        mag
    }
}

/// `atan(1/x) * 2^bits` by its alternating Taylor series.
fn arctan_inverse(x: u32, bits: usize) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x) * x;
    let mut power = &one / x; // 2^bits / x^{2k+1}
    let mut total = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        power /= &x2;
        k += 1;
    }
    total
}

/// `pi * 2^bits` via Machin's formula, accurate to a few units in the last place.
pub fn pi_fixed(bits: usize) -> BigInt {
    let guard = 16;
    let p = 16 * arctan_inverse(5, bits + guard) - 4 * arctan_inverse(239, bits + guard);
    p >> guard
}

/// `|est/A_n - 1|` in fixed point, with `est/A_n = 2^{n+2} n! / (pi^{n+1} A_n)`.
fn fixed_rel_error(n: usize, exact: &BigInt, pi: &BigInt) -> f64 {
    let bits = FIXED_BITS;
    let numer = (factorial(n) << (n + 2)) << (bits * (n + 2));
    let denom = pi.pow(n as u32 + 1) * exact;
    let ratio = numer / denom;
    let diff = (ratio - (BigInt::one() << bits)).abs();
    big_to_f64(&diff) / 2f64.powi(bits as i32)
}

pub fn asymptotic_error_table(max_n: usize, oracle: &ZigzagTable) -> Result<Vec<AsymptoticRow>> {
    if max_n < 2 {
        return Err(Error::InvalidInput("asymptotic table needs N >= 2".into()));
    }
    if max_n > oracle.max_index() {
        return Err(Error::RangeExceeded {
            op: "asymptotic_error_table",
            index: max_n,
            max: oracle.max_index(),
        });
    }
    let pi = pi_fixed(FIXED_BITS);
    Ok((1..=max_n)
        .map(|n| {
            let exact = oracle.get(n);
            AsymptoticRow {
                n,
                estimate_log: asymptotic_estimate_log(n),
                exact_log: big_ln(exact),
                rel_error: fixed_rel_error(n, exact, &pi),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::zigzag_entringer;

    #[test]
    fn estimate_examples() {
        assert!((asymptotic_estimate_log(0).exp() - 4.0 / PI).abs() < 1e-14);
        assert!((asymptotic_estimate_log(1).exp() - 8.0 / (PI * PI)).abs() < 1e-14);
        // 4/pi (2/pi)^10 10! = 50521.284183545992... (40-digit reference)
        let est = asymptotic_estimate_log(10).exp();
        assert!((est - 50_521.284_183_545_99).abs() < 1e-8, "{est}");
    }

    #[test]
    fn pi_digits() {
        let p = pi_fixed(200);
        let approx = big_to_f64(&p) / 2f64.powi(200);
        assert_eq!(approx, PI);
    }

    #[test]
    fn big_ln_of_small_and_large() {
        assert!((big_ln(&BigInt::from(50521)) - 50521f64.ln()).abs() < 1e-15);
        let big = BigInt::one() << 300usize;
        assert!((big_ln(&big) - 300.0 * LN_2).abs() < 1e-12);
    }

    #[test]
    fn table_shape_and_checkpoints() {
        let oracle = zigzag_entringer(20);
        let two = asymptotic_error_table(2, &oracle).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(|r| r.rel_error.is_finite()));
        let rows = asymptotic_error_table(20, &oracle).unwrap();
        assert!((rows[0].rel_error - 0.19).abs() < 0.01);
        // |est/A_10 - 1| = 5.625057817398e-6 (40-digit reference)
        assert!((rows[9].rel_error - 5.625_057_817_398e-6).abs() < 1e-17);
        assert!(rows[19].rel_error < 1e-7);
        assert!(asymptotic_error_table(1, &oracle).is_err());
        assert!(asymptotic_error_table(21, &oracle).is_err());
    }

    #[test]
    fn rel_error_agrees_with_log_difference() {
        let oracle = zigzag_entringer(15);
        for row in asymptotic_error_table(15, &oracle).unwrap() {
            let from_logs = (row.estimate_log - row.exact_log).exp_m1().abs();
            assert!((row.rel_error - from_logs).abs() < 1e-12, "{row:?}");
        }
    }
}
