//! Dense univariate polynomials and truncated power series over exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Coefficients in ascending degree; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalPoly {
    #[serde(serialize_with = "crate::encode::rational_vec")]
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Integral against `e^{-y}` on `[0, inf)`: each `y^k` contributes `k!`.
    pub fn laplace_moment(&self) -> BigRational {
        let mut factorial = BigInt::one();
        let mut total = BigRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                factorial *= k;
            }
            total += c * BigRational::from_integer(factorial.clone());
        }
        total
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{}", crate::encode::rational_string(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Product of two series truncated after `x^order`.
pub fn series_mul(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Reciprocal of a series with nonzero constant term, truncated after `x^order`.
pub fn series_reciprocal(a: &[BigRational], order: usize) -> Vec<BigRational> {
    assert!(
        a.first().is_some_and(|c| !c.is_zero()),
        "series reciprocal needs a nonzero constant term"
    );
    let inv0 = a[0].recip();
    let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
    out.push(inv0.clone());
    for n in 1..=order {
        let mut acc = BigRational::zero();
        for k in 1..=n.min(a.len() - 1) {
            acc += &a[k] * &out[n - k];
        }
        out.push(-acc * &inv0);
    }
    out
}
