//! Exact evaluation of the closed-form and finite-sum representations of `A_n`,
//! and the discrepancy harness that compares them with the oracle.
//!
//! Integrals with polynomial kernels are evaluated by the moment rule
//! `int_0^inf e^{-y} y^k dy = k!`, so every comparison here is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::encode::Exact;
use crate::error::{Error, Result};
use crate::exact::{
    bernoulli, euler_numbers, factorial, zigzag_entringer, RationalSeq, StirlingTriangle,
    ZigzagTable,
};
use crate::poly::RationalPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationId {
    StirlingSum,
    KernelIntegral,
    LaplaceProduct,
    BernoulliTangent,
    EulerSecant,
}

/// Closed set of patterns the harness knows how to recognise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternCode {
    ExactMatch,
    EvenIndexZero,
    OddIndexAbsMatch,
    SignAlternating,
    ConstantRatio,
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexComparison {
    pub n: usize,
    pub formula_value: Exact,
    #[serde(serialize_with = "crate::encode::big")]
    pub oracle_value: BigInt,
    #[serde(rename = "match")]
    pub matches: bool,
    pub abs_match: bool,
    pub is_zero: bool,
}

impl IndexComparison {
    pub fn new(n: usize, formula_value: BigRational, oracle_value: BigInt) -> Self {
        let oracle = BigRational::from_integer(oracle_value.clone());
        Self {
            n,
            matches: formula_value == oracle,
            abs_match: formula_value.abs() == oracle.abs(),
            is_zero: formula_value.is_zero(),
            formula_value: Exact(formula_value),
            oracle_value,
        }
    }
}

/// Agreement of a formula with some second reference other than the oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub n: usize,
    pub reference: String,
    pub reference_value: Exact,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub description: String,
    pub ratio: Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub representation_id: RepresentationId,
    pub per_index: Vec<IndexComparison>,
    pub classification: Vec<PatternCode>,
    pub notes: Vec<String>,
    pub calibration: Option<Calibration>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cross_checks: Vec<CrossCheck>,
}

impl DiscrepancyReport {
    pub fn from_comparisons(id: RepresentationId, per_index: Vec<IndexComparison>) -> Self {
        let (classification, calibration) = classify(&per_index);
        let mut notes = Vec::new();
        if let Some(first) = per_index.iter().find(|c| !c.matches) {
            notes.push(format!(
                "first mismatch at n={}: formula {} vs oracle {}",
                first.n,
                crate::encode::rational_string(&first.formula_value.0),
                first.oracle_value
            ));
        }
        let mismatches = per_index.iter().filter(|c| !c.matches).count();
        notes.push(format!(
            "{} of {} indices match exactly",
            per_index.len() - mismatches,
            per_index.len()
        ));
        Self {
            representation_id: id,
            per_index,
            classification,
            notes,
            calibration,
            cross_checks: Vec::new(),
        }
    }

    pub fn all_match(&self) -> bool {
        self.per_index.iter().all(|c| c.matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &IndexComparison> {
        self.per_index.iter().filter(|c| !c.matches)
    }

    pub fn has(&self, code: PatternCode) -> bool {
        self.classification.contains(&code)
    }
}

/// Patterns are read off the comparison rows alone.
pub fn classify(rows: &[IndexComparison]) -> (Vec<PatternCode>, Option<Calibration>) {
    if rows.is_empty() {
        return (vec![PatternCode::Unclassified], None);
    }
    if rows.iter().all(|c| c.matches) {
        return (vec![PatternCode::ExactMatch], None);
    }
    let mut codes = Vec::new();

    let even: Vec<_> = rows.iter().filter(|c| c.n >= 2 && c.n % 2 == 0).collect();
    if !even.is_empty() && even.iter().all(|c| c.is_zero) {
        codes.push(PatternCode::EvenIndexZero);
    }
    let odd: Vec<_> = rows.iter().filter(|c| c.n % 2 == 1).collect();
    if !odd.is_empty() && odd.iter().all(|c| c.abs_match) {
        codes.push(PatternCode::OddIndexAbsMatch);
    }
    let signs: Vec<bool> = rows
        .iter()
        .filter(|c| !c.is_zero)
        .map(|c| c.formula_value.0.is_negative())
        .collect();
    if signs.len() >= 2 && signs.windows(2).all(|w| w[0] != w[1]) {
        codes.push(PatternCode::SignAlternating);
    }

    let mut calibration = None;
    let ratios: Option<Vec<BigRational>> = rows
        .iter()
        .map(|c| {
            (!c.oracle_value.is_zero())
                .then(|| &c.formula_value.0 / BigRational::from_integer(c.oracle_value.clone()))
        })
        .collect();
    if let Some(ratios) = ratios {
        if ratios.len() >= 2 && !ratios[0].is_zero() && ratios.iter().all(|r| *r == ratios[0]) {
            codes.push(PatternCode::ConstantRatio);
            calibration = Some(Calibration {
                description: "formula = ratio * oracle at every tested index".into(),
                ratio: Exact(ratios[0].clone()),
            });
        }
    }

    if codes.is_empty() {
        codes.push(PatternCode::Unclassified);
    }
    (codes, calibration)
}

/// Result of comparing `sum (-1)^k S(n,k) x^k` with the falling factorial `x(x-1)...(x-n+1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FallingFactorialCheck {
    pub n: usize,
    pub holds: bool,
    pub stirling_side: String,
    pub falling_factorial: String,
    /// Lowest degree where the two sides differ, with both coefficients.
    pub first_difference: Option<(usize, Exact, Exact)>,
}

/// Exact tables sized for representation work up to index `max_n`.
#[derive(Debug, Clone)]
pub struct Representations {
    max_n: usize,
    stirling: StirlingTriangle,
    zigzag: ZigzagTable,
    bernoulli: RationalSeq,
    euler: RationalSeq,
}

impl Representations {
    pub fn new(max_n: usize) -> Self {
        Self {
            max_n,
            stirling: StirlingTriangle::new(max_n),
            zigzag: zigzag_entringer(max_n),
            bernoulli: bernoulli(max_n + 2),
            euler: euler_numbers(max_n / 2 + 1),
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn zigzag(&self) -> &ZigzagTable {
        &self.zigzag
    }

    pub fn stirling(&self) -> &StirlingTriangle {
        &self.stirling
    }

    fn guard(&self, op: &'static str, index: usize) -> Result<()> {
        if index > self.max_n {
            Err(Error::RangeExceeded {
                op,
                index,
                max: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    /// `sum_{k=0}^{n} (-1)^k 2^{n-k} k! S(n,k)`, exactly as written.
    pub fn stirling_sum_literal(&self, n: usize) -> Result<BigInt> {
        self.guard("stirling_sum_literal", n)?;
        let mut total = BigInt::zero();
        let mut k_factorial = BigInt::one();
        for k in 0..=n {
            if k > 0 {
                k_factorial *= k;
            }
            let term = (BigInt::one() << (n - k)) * &k_factorial * self.stirling.get(n, k);
            if k % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        Ok(total)
    }

    /// Literal Stirling sum against the oracle for `n = 1..=max_n`.
    pub fn stirling_sum_report(&self, max_n: usize) -> Result<DiscrepancyReport> {
        if max_n == 0 {
            return Err(Error::InvalidInput("stirling_sum_report needs N >= 1".into()));
        }
        self.guard("stirling_sum_report", max_n)?;
        let rows = (1..=max_n)
            .map(|n| {
                let literal = self.stirling_sum_literal(n)?;
                Ok(IndexComparison::new(
                    n,
                    BigRational::from_integer(literal),
                    self.zigzag.get(n).clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiscrepancyReport::from_comparisons(RepresentationId::StirlingSum, rows))
    }

    /// `A_{2n+1}` from `B_{2n+2}`; the rational must be an integer.
    pub fn bernoulli_tangent(&self, n: usize) -> Result<BigInt> {
        let m = 2 * n + 2;
        if m >= self.bernoulli.len() {
            return Err(Error::RangeExceeded {
                op: "bernoulli_tangent",
                index: 2 * n + 1,
                max: self.bernoulli.len().saturating_sub(3),
            });
        }
        let pow = BigInt::one() << m;
        let factor = BigRational::new(&pow * (&pow - 1u32), BigInt::from(m));
        let mut value = factor * self.bernoulli.get(m);
        if n % 2 == 1 {
            value = -value;
        }
        if !value.is_integer() {
            return Err(Error::NonIntegral {
                what: "Bernoulli tangent formula",
                index: 2 * n + 1,
            });
        }
        Ok(value.to_integer())
    }

    /// `|E_{2n}|`.
    pub fn euler_secant(&self, n: usize) -> Result<BigInt> {
        if 2 * n >= self.euler.len() {
            return Err(Error::RangeExceeded {
                op: "euler_secant",
                index: 2 * n,
                max: self.euler.len().saturating_sub(1),
            });
        }
        Ok(self.euler.get(2 * n).to_integer().abs())
    }

    pub fn bernoulli_tangent_report(&self) -> Result<DiscrepancyReport> {
        let rows = (0..)
            .map(|n| 2 * n + 1)
            .take_while(|&idx| idx <= self.max_n)
            .map(|idx| {
                let v = self.bernoulli_tangent((idx - 1) / 2)?;
                Ok(IndexComparison::new(
                    idx,
                    BigRational::from_integer(v),
                    self.zigzag.get(idx).clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiscrepancyReport::from_comparisons(
            RepresentationId::BernoulliTangent,
            rows,
        ))
    }

    pub fn euler_secant_report(&self) -> Result<DiscrepancyReport> {
        let rows = (0..)
            .map(|n| 2 * n)
            .take_while(|&idx| idx <= self.max_n)
            .map(|idx| {
                let v = self.euler_secant(idx / 2)?;
                Ok(IndexComparison::new(
                    idx,
                    BigRational::from_integer(v),
                    self.zigzag.get(idx).clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiscrepancyReport::from_comparisons(
            RepresentationId::EulerSecant,
            rows,
        ))
    }

    /// `f_n(y) = sum_k (-1)^k S(n,k) (y/2)^k`.
    pub fn stirling_kernel_poly(&self, n: usize) -> Result<RationalPoly> {
        self.guard("stirling_kernel_poly", n)?;
        let coeffs = (0..=n)
            .map(|k| {
                let c = BigRational::new(self.stirling.get(n, k), BigInt::one() << k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Ok(RationalPoly::new(coeffs))
    }

    /// `2^n int_0^inf e^{-y} f_n(y) dy` by moments.
    pub fn kernel_integral_exact(&self, n: usize) -> Result<BigRational> {
        let moment = self.stirling_kernel_poly(n)?.laplace_moment();
        Ok(moment * BigRational::from_integer(BigInt::one() << n))
    }

    pub fn kernel_integral_report(&self, max_n: usize) -> Result<DiscrepancyReport> {
        self.guard("kernel_integral_report", max_n)?;
        let mut rows = Vec::with_capacity(max_n);
        let mut checks = Vec::with_capacity(max_n);
        for n in 1..=max_n {
            let value = self.kernel_integral_exact(n)?;
            let literal = BigRational::from_integer(self.stirling_sum_literal(n)?);
            checks.push(CrossCheck {
                n,
                reference: "stirling_sum_literal".into(),
                agrees: value == literal,
                reference_value: Exact(literal),
            });
            rows.push(IndexComparison::new(n, value, self.zigzag.get(n).clone()));
        }
        let mut report = DiscrepancyReport::from_comparisons(RepresentationId::KernelIntegral, rows);
        report.cross_checks = checks;
        Ok(report)
    }

    /// `y (y-2) (y-4) ... (y-2(n-1))` expanded exactly.
    pub fn laplace_product_poly(n: usize) -> RationalPoly {
        stepped_products(2, n).last().expect("at least the empty product")
    }

    /// `int_0^inf e^{-y} y (y-2) ... (y-2(n-1)) dy` by moments.
    pub fn laplace_product_integral_exact(&self, n: usize) -> Result<BigRational> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "laplace_product_integral_exact needs n >= 1".into(),
            ));
        }
        Ok(Self::laplace_product_poly(n).laplace_moment())
    }

    /// Product integral against the oracle, with per-index agreement with the literal sum.
    pub fn laplace_product_report(&self, max_n: usize) -> Result<DiscrepancyReport> {
        self.guard("laplace_product_report", max_n)?;
        let mut rows = Vec::with_capacity(max_n);
        let mut checks = Vec::with_capacity(max_n);
        for (n, product) in stepped_products(2, max_n).enumerate().skip(1) {
            let value = product.laplace_moment();
            let literal = BigRational::from_integer(self.stirling_sum_literal(n)?);
            checks.push(CrossCheck {
                n,
                reference: "stirling_sum_literal".into(),
                agrees: value == literal,
                reference_value: Exact(literal),
            });
            rows.push(IndexComparison::new(n, value, self.zigzag.get(n).clone()));
        }
        let mut report = DiscrepancyReport::from_comparisons(RepresentationId::LaplaceProduct, rows);
        report.cross_checks = checks;
        Ok(report)
    }

    pub fn falling_factorial_identity_check(&self, n: usize) -> Result<FallingFactorialCheck> {
        self.guard("falling_factorial_identity_check", n)?;
        let rhs = stepped_products(1, n).last().expect("at least the empty product");
        Ok(self.compare_falling_factorial(n, &rhs))
    }

    /// Checks for `n = 0..=max_n`, building the falling factorials incrementally.
    pub fn falling_factorial_identity_checks(&self, max_n: usize) -> Result<Vec<FallingFactorialCheck>> {
        self.guard("falling_factorial_identity_check", max_n)?;
        Ok(stepped_products(1, max_n)
            .enumerate()
            .map(|(n, rhs)| self.compare_falling_factorial(n, &rhs))
            .collect())
    }

    fn compare_falling_factorial(&self, n: usize, rhs: &RationalPoly) -> FallingFactorialCheck {
        let lhs = RationalPoly::from_integers((0..=n).map(|k| {
            let s = self.stirling.get(n, k);
            if k % 2 == 1 {
                -s
            } else {
                s
            }
        }));
        let first_difference = (0..=n)
            .map(|k| (k, lhs.coeff(k), rhs.coeff(k)))
            .find(|(_, a, b)| a != b)
            .map(|(k, a, b)| (k, Exact(a), Exact(b)));
        FallingFactorialCheck {
            n,
            holds: first_difference.is_none(),
            stirling_side: lhs.to_string(),
            falling_factorial: rhs.to_string(),
            first_difference,
        }
    }
}

/// `prod_{j<n} (x - step j)` for `n = 0..=max_n`, each from the previous one.
fn stepped_products(step: i64, max_n: usize) -> impl Iterator<Item = RationalPoly> {
    let mut current = Some(RationalPoly::one());
    (0..=max_n).map(move |j| {
        let out = current.take().expect("product carried between steps");
        let next = out.mul(&RationalPoly::from_integers([
            BigInt::from(-step * j as i64),
            BigInt::one(),
        ]));
        current = Some(next);
        out
    })
}

/// `n!` as an exact rational, used to scale contour coefficients.
pub fn factorial_rational(n: usize) -> BigRational {
    BigRational::from_integer(factorial(n))
}
