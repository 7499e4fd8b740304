//! Exact big-integer and big-rational tables.
//!
//! Two independent routes produce the alternating numbers `A_n`:
//! the Seidel–Entringer boustrophedon triangle (integer additions only) and
//! the exact power series of `sec x + tan x`. Everything else in the crate
//! reads from these tables and never writes to them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{series_mul, series_reciprocal};

/// `A_1..A_10`, the first ten alternating numbers.
pub const TABLE_ONE: [u64; 10] = [1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Oracle {
    Entringer,
    EgfSeries,
}

impl Oracle {
    pub fn as_str(self) -> &'static str {
        match self {
            Oracle::Entringer => "entringer",
            Oracle::EgfSeries => "egf_series",
        }
    }
}

impl std::str::FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "entringer" => Ok(Oracle::Entringer),
            "egf_series" | "egf-series" => Ok(Oracle::EgfSeries),
            other => Err(Error::InvalidInput(format!("unknown oracle {other:?}"))),
        }
    }
}

/// `A_0..=A_max_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZigzagTable {
    max_index: usize,
    #[serde(serialize_with = "crate::encode::big_vec")]
    values: Vec<BigInt>,
    provenance: Oracle,
}

impl ZigzagTable {
    pub fn compute(max_index: usize, oracle: Oracle) -> Result<Self> {
        match oracle {
            Oracle::Entringer => Ok(zigzag_entringer(max_index)),
            Oracle::EgfSeries => zigzag_egf_series(max_index),
        }
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn provenance(&self) -> Oracle {
        self.provenance
    }

    /// `A_n`; panics past `max_index`.
    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n]
    }
}

/// Boustrophedon triangle; row `n` has `n + 1` entries and ends in `A_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntringerTriangle {
    #[serde(serialize_with = "crate::encode::big_rows")]
    rows: Vec<Vec<BigInt>>,
}

impl EntringerTriangle {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::zero());
            for k in 1..=n {
                let next = &row[k - 1] + &prev[n - k];
                row.push(next);
            }
            rows.push(row);
        }
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }
}

pub fn zigzag_entringer(max_index: usize) -> ZigzagTable {
    let triangle = EntringerTriangle::new(max_index);
    let values = triangle
        .rows
        .into_iter()
        .map(|mut row| row.pop().expect("rows are never empty"))
        .collect();
    ZigzagTable {
        max_index,
        values,
        provenance: Oracle::Entringer,
    }
}

/// `n!·[x^n](sec x + tan x)` from exact rational series: `sec = 1/cos`, `tan = sin·sec`.
pub fn zigzag_egf_series(max_index: usize) -> Result<ZigzagTable> {
    let order = max_index;
    let mut cos = vec![BigRational::zero(); order + 1];
    let mut sin = vec![BigRational::zero(); order + 1];
    let mut factorial = BigInt::one();
    for k in 0..=order {
        if k > 0 {
            factorial *= k;
        }
        let term = BigRational::new(BigInt::one(), factorial.clone());
        match k % 4 {
            0 => cos[k] = term,
            1 => sin[k] = term,
            2 => cos[k] = -term,
            _ => sin[k] = -term,
        }
    }
    let sec = series_reciprocal(&cos, order);
    let tan = series_mul(&sin, &sec, order);

    let mut values = Vec::with_capacity(order + 1);
    let mut factorial = BigInt::one();
    for n in 0..=order {
        if n > 0 {
            factorial *= n;
        }
        let scaled = (&sec[n] + &tan[n]) * BigRational::from_integer(factorial.clone());
        if !scaled.is_integer() {
            return Err(Error::IntegralityViolation { index: n });
        }
        values.push(scaled.to_integer());
    }
    Ok(ZigzagTable {
        max_index,
        values,
        provenance: Oracle::EgfSeries,
    })
}

/// Stirling numbers of the second kind `S(n, k)`, `0 <= k <= n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StirlingTriangle {
    max_n: usize,
    #[serde(serialize_with = "crate::encode::big_rows")]
    entries: Vec<Vec<BigInt>>,
}

impl StirlingTriangle {
    pub fn new(max_n: usize) -> Self {
        let mut entries: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        entries.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &entries[n - 1];
            let mut row = vec![BigInt::zero(); n + 1];
            for k in 1..=n {
                let carried = if k < n { &prev[k] * k } else { BigInt::zero() };
                row[k] = carried + &prev[k - 1];
            }
            entries.push(row);
        }
        Self { max_n, entries }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.entries[n]
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.entries[n].get(k).cloned().unwrap_or_default()
    }

    /// `S(n, k)` with zero outside `0 <= k <= n`; `n` must be within the table.
    pub fn get_signed(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        self.get(n as usize, k as usize)
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.entries[n].iter().sum()
    }
}

pub fn stirling2(max_n: usize) -> StirlingTriangle {
    StirlingTriangle::new(max_n)
}

/// Exact rationals indexed from zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalSeq {
    #[serde(serialize_with = "crate::encode::rational_vec")]
    values: Vec<BigRational>,
}

impl RationalSeq {
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, index: usize) -> &BigRational {
        &self.values[index]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The sign convention for `B_1` used by [`bernoulli`].
pub const BERNOULLI_B1: &str = "-1/2";

/// `B_0..=B_max` by the Akiyama–Tanigawa transform, with `B_1 = -1/2`.
pub fn bernoulli(max: usize) -> RationalSeq {
    let mut work: Vec<BigRational> = Vec::with_capacity(max + 1);
    let mut values = Vec::with_capacity(max + 1);
    for m in 0..=max {
        work.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &work[j - 1] - &work[j];
            work[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        values.push(work[0].clone());
    }
    // The transform yields B_1 = +1/2.
    if max >= 1 {
        values[1] = -values[1].clone();
    }
    RationalSeq { values }
}

/// Signed Euler numbers `E_0..=E_{2 max}` (odd indices zero), from
/// `cos x · sec x = 1` written as `sum_k C(2n, 2k) E_{2k} = 0`.
pub fn euler_numbers(max: usize) -> RationalSeq {
    let mut even: Vec<BigInt> = Vec::with_capacity(max + 1);
    even.push(BigInt::one());
    for n in 1..=max {
        let mut binom = BigInt::one(); // C(2n, 0)
        let mut acc = BigInt::zero();
        for (k, e) in even.iter().enumerate() {
            acc += &binom * e;
            // C(2n, 2k) -> C(2n, 2k + 2)
            let top = BigInt::from(2 * n - 2 * k) * BigInt::from(2 * n - 2 * k - 1);
            let bottom = BigInt::from(2 * k + 1) * BigInt::from(2 * k + 2);
            binom = binom * top / bottom;
        }
        even.push(-acc);
    }
    let mut values = Vec::with_capacity(2 * max + 1);
    for (i, e) in even.into_iter().enumerate() {
        if i > 0 {
            values.push(BigRational::zero());
        }
        values.push(BigRational::from_integer(e));
    }
    RationalSeq { values }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Nonnegative residue of `value` modulo `modulus`.
pub fn residue(value: &BigInt, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    let r = value.mod_floor(&m);
    u64::try_from(r.magnitude()).expect("residue fits below modulus")
}

/// `|value|` as an exact integer when it is one.
pub fn integer_magnitude(value: &BigRational) -> Option<BigInt> {
    value.is_integer().then(|| value.to_integer().abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn entringer_zero_is_one() {
        assert_eq!(zigzag_entringer(0).values(), &[big(1)]);
    }

    #[test]
    fn entringer_reproduces_table_one() {
        let t = zigzag_entringer(10);
        let tail: Vec<BigInt> = TABLE_ONE.iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(&t.values()[1..], tail.as_slice());
    }

    #[test]
    fn egf_small_orders() {
        let four = zigzag_egf_series(4).unwrap();
        assert_eq!(four.values(), &[1, 1, 1, 2, 5].map(big));
        assert_eq!(zigzag_egf_series(1).unwrap().values(), &[big(1), big(1)]);
        assert_eq!(zigzag_egf_series(0).unwrap().values(), &[big(1)]);
    }

    #[test]
    fn oracles_agree_at_twelve() {
        let a = zigzag_entringer(12);
        let b = zigzag_egf_series(12).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(a.get(11), &big(353792));
        assert_eq!(a.get(12), &big(2702765));
    }

    #[test]
    fn entringer_rows_are_reversed_partial_sums() {
        let tri = EntringerTriangle::new(8);
        for n in 1..=8 {
            let prev = &tri.rows()[n - 1];
            let row = &tri.rows()[n];
            assert_eq!(row.len(), n + 1);
            let mut acc = BigInt::zero();
            assert!(row[0].is_zero());
            for k in 1..=n {
                acc += &prev[n - k];
                assert_eq!(row[k], acc);
            }
        }
    }

    #[test]
    fn stirling_examples() {
        let s = stirling2(5);
        assert_eq!(s.get(0, 0), big(1));
        assert_eq!(s.get(3, 2), big(3));
        assert_eq!(s.get(5, 3), big(25));
        assert_eq!(s.row(5), &[0, 1, 15, 25, 10, 1].map(big));
        assert_eq!(s.get_signed(2, -1), big(0));
        assert_eq!(s.get_signed(2, 3), big(0));
    }

    #[test]
    fn bernoulli_examples() {
        let b = bernoulli(8);
        assert_eq!(b.get(0), &rat(1, 1));
        assert_eq!(b.get(1), &rat(-1, 2));
        assert_eq!(b.get(2), &rat(1, 6));
        assert_eq!(b.get(3), &rat(0, 1));
        assert_eq!(b.get(4), &rat(-1, 30));
        assert_eq!(b.get(6), &rat(1, 42));
        assert_eq!(b.get(8), &rat(-1, 30));
    }

    #[test]
    fn euler_examples() {
        let e = euler_numbers(3);
        assert_eq!(e.len(), 7);
        assert_eq!(e.get(0), &rat(1, 1));
        assert_eq!(e.get(2), &rat(-1, 1));
        assert_eq!(e.get(4), &rat(5, 1));
        assert_eq!(e.get(6), &rat(-61, 1));
        assert!(e.get(5).is_zero());
    }

    #[test]
    fn residue_is_nonnegative() {
        assert_eq!(residue(&big(-3), 3), 0);
        assert_eq!(residue(&big(-1), 3), 2);
        assert_eq!(residue(&big(272), 9), 2);
    }

    #[test]
    fn oracle_parses() {
        assert_eq!("entringer".parse::<Oracle>().unwrap(), Oracle::Entringer);
        assert_eq!("egf_series".parse::<Oracle>().unwrap(), Oracle::EgfSeries);
        assert!("nope".parse::<Oracle>().is_err());
    }
}
