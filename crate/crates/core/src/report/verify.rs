use std::f64::consts::PI;

use num_bigint::BigInt;
use serde::Serialize;

use super::commands::{
    classical_ratio, rel, to_f64, CALIBRATED_TOL, CONTOUR_CHECK_MAX, CONTOUR_TOL, RATIO_TOL,
};
use super::{ledger_regressions, FormulaStatus, LedgerRow, ReportEnvelope, Run};
use crate::arithmetic::{
    an_congruence_check_with, mod_p2_residue_probe, period_finder_with, residue_check,
    touchard_paper_check, wilson_step_check, ClaimId, CongruenceReport, PeriodReport, Verdict,
};
use crate::asymptotics::{asymptotic_error_table, AsymptoticRow};
use crate::encode;
use crate::error::{Error, Result};
use crate::exact::{zigzag_egf_series, zigzag_entringer, TABLE_ONE};
use crate::quadrature::{
    contour_trapezoid, default_epsilons, default_nodes, fourier_cutoff_scan, hyper_calibrated,
    hyper_classical, hyper_sinh_literal, ContourResult, FourierBehavior, FourierScan, Kernel,
    Parity, QuadratureConfig, DEFAULT_RADIUS, MAX_HYPER_INDEX, MAX_SINH_LITERAL_N,
};
use crate::representations::{DiscrepancyReport, FallingFactorialCheck, Representations};
use crate::spectral::{
    mellin_identity_check, spectral_series_calibrated, spectral_series_literal, MellinCheck,
    MAX_MELLIN_CHECK_S, MAX_SPECTRAL_N,
};

pub const MAX_VERIFY_INDEX: usize = 200;

/// Fixed grids for the arithmetic section, independent of `N`.
const CONGRUENCE_N_MAX: usize = 30;
const PERIOD_N_MAX: usize = 200;
const FOURIER_MAX_N: usize = 3;
/// The asymptotic table always covers at least this range.
const ASYMPTOTIC_MIN_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyParams {
    pub max_index: usize,
    pub rel_tol: f64,
    /// Contour nodes; `None` means `max(64, 8(n+1))` per index.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    pub radius: f64,
}

impl VerifyParams {
    pub fn new(max_index: usize) -> Self {
        VerifyParams {
            max_index,
            rel_tol: QuadratureConfig::default().rel_tol,
            nodes: None,
            radius: DEFAULT_RADIUS,
        }
    }
}

#[derive(Serialize)]
struct OracleSection {
    max_index: usize,
    oracles_agree: bool,
    #[serde(serialize_with = "encode::big_vec")]
    leading_values: Vec<BigInt>,
    table_values_match: bool,
}

#[derive(Serialize)]
struct ContourRow {
    #[serde(flatten)]
    result: ContourResult,
    literal: f64,
    oracle: f64,
    residual: f64,
    matches_literal: bool,
    printed_matches_oracle: bool,
}

/// A floating-point form compared with the oracle, either as a ratio pattern or directly.
#[derive(Serialize)]
struct FloatRow {
    n: usize,
    oracle_index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    parity: Option<Parity>,
    value: f64,
    oracle: f64,
    ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_ratio: Option<f64>,
    rel_deviation: f64,
    passes: bool,
}

impl FloatRow {
    fn pattern(n: usize, idx: usize, parity: Option<Parity>, value: f64, expected: f64) -> Self {
        let oracle = to_f64(zigzag_entringer(idx).get(idx));
        let ratio = value / oracle;
        let rel_deviation = rel(ratio, expected);
        FloatRow {
            n,
            oracle_index: idx,
            parity,
            value,
            oracle,
            ratio,
            expected_ratio: Some(expected),
            rel_deviation,
            passes: rel_deviation <= RATIO_TOL,
        }
    }

    fn direct(n: usize, idx: usize, parity: Option<Parity>, value: f64) -> Self {
        let oracle = to_f64(zigzag_entringer(idx).get(idx));
        let rel_deviation = rel(value, oracle);
        FloatRow {
            n,
            oracle_index: idx,
            parity,
            value,
            oracle,
            ratio: value / oracle,
            expected_ratio: None,
            rel_deviation,
            passes: rel_deviation <= CALIBRATED_TOL,
        }
    }

    /// Literal forms match the oracle only if the ratio is 1.
    fn equals_oracle(&self) -> bool {
        rel(self.value, self.oracle) <= CALIBRATED_TOL
    }
}

#[derive(Serialize)]
struct AsymptoticSection {
    rows: Vec<AsymptoticRow>,
    strictly_decreasing_from_2: bool,
}

#[derive(Serialize)]
struct ArithmeticSection {
    touchard_printed: CongruenceReport,
    wilson_step: Vec<CongruenceReport>,
    an_congruence: Vec<CongruenceReport>,
    mod_p2_probe: CongruenceReport,
    mod_9_residue: CongruenceReport,
    periods: Vec<PeriodReport>,
}

#[derive(Serialize)]
struct VerifyResults {
    oracle: OracleSection,
    euler_secant: DiscrepancyReport,
    bernoulli_tangent: DiscrepancyReport,
    stirling_sum: DiscrepancyReport,
    kernel_integral: DiscrepancyReport,
    laplace_product: DiscrepancyReport,
    falling_factorial: Vec<FallingFactorialCheck>,
    contour: Vec<ContourRow>,
    hyper_sinh_literal: Vec<FloatRow>,
    hyper_classical: Vec<FloatRow>,
    hyper_calibrated: Vec<FloatRow>,
    spectral_literal: Vec<FloatRow>,
    spectral_calibrated: Vec<FloatRow>,
    fourier: Vec<FourierScan>,
    mellin: Vec<MellinCheck>,
    asymptotics: AsymptoticSection,
    arithmetic: ArithmeticSection,
}

/// Literal rows: verified when every value equals the oracle, mismatch otherwise.
fn literal_status(rows: &[FloatRow]) -> FormulaStatus {
    if !rows.is_empty() && rows.iter().all(FloatRow::equals_oracle) {
        FormulaStatus::Verified
    } else {
        FormulaStatus::Mismatch
    }
}

fn calibrated_status(ok: bool) -> FormulaStatus {
    if ok {
        FormulaStatus::Calibrated
    } else {
        FormulaStatus::Mismatch
    }
}

fn verified_status(ok: bool) -> FormulaStatus {
    if ok {
        FormulaStatus::Verified
    } else {
        FormulaStatus::Mismatch
    }
}

fn holds(reports: &[CongruenceReport], id: ClaimId) -> bool {
    reports
        .iter()
        .filter(|r| r.claim.claim_id == id)
        .all(|r| r.verdict == Verdict::HoldsOnGrid)
}

/// Runs every representation up to `N` and fills the formula-status ledger.
/// `regressions` lists rows frozen as verified that no longer verify.
pub fn cmd_verify(params: &VerifyParams) -> Result<Run> {
    let n_max = params.max_index;
    if n_max == 0 {
        return Err(Error::InvalidInput("verify needs N >= 1".into()));
    }
    if n_max > MAX_VERIFY_INDEX {
        return Err(Error::RangeExceeded {
            op: "verify",
            index: n_max,
            max: MAX_VERIFY_INDEX,
        });
    }
    if !(params.radius > 0.0 && params.radius < PI) {
        return Err(Error::DivergentParameters {
            radius: params.radius,
        });
    }
    let cfg = QuadratureConfig::default().with_rel_tol(params.rel_tol);
    cfg.validate()?;

    let oracle_n = n_max.max(TABLE_ONE.len());
    let entringer = zigzag_entringer(oracle_n);
    let egf = zigzag_egf_series(oracle_n)?;
    let table_values_match = TABLE_ONE
        .iter()
        .enumerate()
        .all(|(i, &v)| *entringer.get(i + 1) == BigInt::from(v));
    let oracle = OracleSection {
        max_index: oracle_n,
        oracles_agree: entringer.values() == egf.values(),
        leading_values: entringer.values()[..=TABLE_ONE.len()].to_vec(),
        table_values_match,
    };

    let reps = Representations::new(n_max);
    let euler_secant = reps.euler_secant_report()?;
    let bernoulli_tangent = reps.bernoulli_tangent_report()?;
    let stirling_sum = reps.stirling_sum_report(n_max)?;
    let kernel_integral = reps.kernel_integral_report(n_max)?;
    let laplace_product = reps.laplace_product_report(n_max)?;
    let falling_factorial = reps.falling_factorial_identity_checks(n_max)?;

    let contour = (0..=n_max.min(CONTOUR_CHECK_MAX))
        .map(|n| {
            let nodes = params.nodes.unwrap_or_else(|| default_nodes(n));
            let result = contour_trapezoid(n, params.radius, nodes)?;
            let literal = to_f64(&reps.stirling_sum_literal(n)?);
            let oracle = to_f64(entringer.get(n));
            let residual = (result.coefficient_scaled - literal).abs();
            Ok(ContourRow {
                literal,
                oracle,
                residual,
                matches_literal: residual <= CONTOUR_TOL * literal.abs().max(1.0),
                printed_matches_oracle: rel(result.printed_value, oracle) <= CALIBRATED_TOL,
                result,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let odd_count = |cap: usize| (0..=cap).take_while(|n| 2 * n < n_max).count();
    let hyper_sinh = (0..odd_count(MAX_SINH_LITERAL_N))
        .map(|n| {
            let q = hyper_sinh_literal(n, &cfg)?;
            let expected = PI.powi(2 * n as i32 + 1);
            Ok(FloatRow::pattern(n, 2 * n + 1, None, q.value, expected))
        })
        .collect::<Result<Vec<_>>>()?;
    let hyper_indices: Vec<(usize, Parity)> = (0..=n_max.min(MAX_HYPER_INDEX))
        .map(|idx| {
            if idx % 2 == 0 {
                (idx / 2, Parity::Even)
            } else {
                (idx / 2, Parity::Odd)
            }
        })
        .collect();
    let hyper_classical_rows = hyper_indices
        .iter()
        .map(|&(n, parity)| {
            let idx = parity.index(n);
            let q = hyper_classical(n, parity, &cfg)?;
            Ok(FloatRow::pattern(n, idx, Some(parity), q.value, classical_ratio(idx)))
        })
        .collect::<Result<Vec<_>>>()?;
    let hyper_calibrated_rows = hyper_indices
        .iter()
        .map(|&(n, parity)| {
            let q = hyper_calibrated(n, parity, &cfg)?;
            Ok(FloatRow::direct(n, parity.index(n), Some(parity), q.value))
        })
        .collect::<Result<Vec<_>>>()?;
    let spectral_literal = (0..odd_count(MAX_SPECTRAL_N))
        .map(|n| {
            let expected = PI.powi(2 * n as i32 + 1);
            Ok(FloatRow::pattern(n, 2 * n + 1, None, spectral_series_literal(n)?, expected))
        })
        .collect::<Result<Vec<_>>>()?;
    let spectral_calibrated = (0..odd_count(MAX_SPECTRAL_N))
        .map(|n| Ok(FloatRow::direct(n, 2 * n + 1, None, spectral_series_calibrated(n)?)))
        .collect::<Result<Vec<_>>>()?;

    let fourier = (0..=n_max.min(FOURIER_MAX_N))
        .map(|n| fourier_cutoff_scan(n, &default_epsilons(), to_f64(entringer.get(n))))
        .collect::<Result<Vec<_>>>()?;

    let mut mellin = Vec::new();
    for s in 1..=MAX_MELLIN_CHECK_S {
        mellin.push(mellin_identity_check(s, Kernel::Cosh, &cfg)?);
    }
    for s in 2..=MAX_MELLIN_CHECK_S {
        mellin.push(mellin_identity_check(s, Kernel::Sinh, &cfg)?);
    }

    let asym_n = n_max.max(ASYMPTOTIC_MIN_N);
    let asym_table = if asym_n > entringer.max_index() {
        zigzag_entringer(asym_n)
    } else {
        entringer.clone()
    };
    let asym_rows = asymptotic_error_table(asym_n, &asym_table)?;
    let decreasing = asym_rows
        .windows(2)
        .filter(|w| w[0].n >= 2)
        .all(|w| w[1].rel_error < w[0].rel_error);

    let arith_oracle = zigzag_entringer(PERIOD_N_MAX.max(CONGRUENCE_N_MAX + 7));
    let mut an = an_congruence_check_with(&arith_oracle, 3, CONGRUENCE_N_MAX)?;
    an.extend(an_congruence_check_with(&arith_oracle, 5, CONGRUENCE_N_MAX)?);
    let arithmetic = ArithmeticSection {
        touchard_printed: touchard_paper_check(3, CONGRUENCE_N_MAX)?,
        wilson_step: [3, 5, 7]
            .iter()
            .map(|&p| wilson_step_check(p))
            .collect::<Result<Vec<_>>>()?,
        an_congruence: an,
        mod_p2_probe: mod_p2_residue_probe(3, CONGRUENCE_N_MAX)?,
        mod_9_residue: residue_check(7, 9, 2),
        periods: [2, 3]
            .iter()
            .map(|&m| period_finder_with(&arith_oracle, m, PERIOD_N_MAX))
            .collect::<Result<Vec<_>>>()?,
    };

    let contour_scaled_ok = contour.iter().all(|c| c.matches_literal);
    let contour_printed_ok = contour.iter().all(|c| c.printed_matches_oracle);
    let mellin_for = |k: Kernel| mellin.iter().filter(|m| m.kernel == k).all(|m| m.passes);
    let all_pass = |rows: &[FloatRow]| !rows.is_empty() && rows.iter().all(|r| r.passes);
    let ledger = vec![
        LedgerRow::new(
            "egf-definition",
            verified_status(oracle.oracles_agree),
            "/results/oracle/oracles_agree",
        ),
        LedgerRow::new(
            "table-values",
            verified_status(oracle.table_values_match),
            "/results/oracle/leading_values",
        ),
        LedgerRow::new(
            "euler-secant",
            verified_status(euler_secant.all_match()),
            "/results/euler_secant",
        ),
        LedgerRow::new(
            "bernoulli-tangent",
            verified_status(bernoulli_tangent.all_match()),
            "/results/bernoulli_tangent",
        ),
        LedgerRow::new(
            "stirling-sum",
            verified_status(stirling_sum.all_match()),
            "/results/stirling_sum",
        ),
        LedgerRow::new(
            "stirling-kernel-integral",
            verified_status(kernel_integral.all_match()),
            "/results/kernel_integral",
        ),
        LedgerRow::new(
            "laplace-product-integral",
            verified_status(laplace_product.all_match()),
            "/results/laplace_product",
        ),
        LedgerRow::new(
            "falling-factorial-identity",
            verified_status(falling_factorial.iter().all(|c| c.holds)),
            "/results/falling_factorial",
        ),
        LedgerRow::new(
            "contour-integral",
            verified_status(contour_printed_ok),
            "/results/contour",
        ),
        LedgerRow::new(
            "contour-integral-scaled",
            calibrated_status(contour_scaled_ok),
            "/results/contour",
        ),
        LedgerRow::new(
            "hyper-sinh",
            literal_status(&hyper_sinh),
            "/results/hyper_sinh_literal",
        ),
        LedgerRow::new(
            "hyper-sinh-calibrated",
            calibrated_status(all_pass(&hyper_sinh) && all_pass(&hyper_calibrated_rows)),
            "/results/hyper_calibrated",
        ),
        LedgerRow::new(
            "hyper-classical",
            literal_status(&hyper_classical_rows),
            "/results/hyper_classical",
        ),
        LedgerRow::new(
            "hyper-calibrated",
            calibrated_status(all_pass(&hyper_calibrated_rows)),
            "/results/hyper_calibrated",
        ),
        LedgerRow::new(
            "spectral-series",
            literal_status(&spectral_literal),
            "/results/spectral_literal",
        ),
        LedgerRow::new(
            "spectral-series-calibrated",
            calibrated_status(all_pass(&spectral_calibrated)),
            "/results/spectral_calibrated",
        ),
        LedgerRow::new(
            "fourier-sine-coefficient",
            verified_status(
                fourier
                    .iter()
                    .all(|s| matches!(s.behavior, FourierBehavior::Convergent { .. }) && s.matches_oracle),
            ),
            "/results/fourier",
        ),
        LedgerRow::new(
            "mellin-cosh",
            verified_status(mellin_for(Kernel::Cosh)),
            "/results/mellin",
        ),
        LedgerRow::new(
            "mellin-sinh",
            verified_status(mellin_for(Kernel::Sinh)),
            "/results/mellin",
        ),
        LedgerRow::new(
            "asymptotic-law",
            verified_status(decreasing),
            "/results/asymptotics",
        ),
        LedgerRow::new(
            "touchard-congruence",
            verified_status(arithmetic.touchard_printed.verdict == Verdict::HoldsOnGrid),
            "/results/arithmetic/touchard_printed",
        ),
        LedgerRow::new(
            "wilson-step",
            verified_status(holds(&arithmetic.wilson_step, ClaimId::WilsonStep)),
            "/results/arithmetic/wilson_step",
        ),
        LedgerRow::new(
            "an-period-congruence",
            verified_status(holds(&arithmetic.an_congruence, ClaimId::AnPeriodP)),
            "/results/arithmetic/an_congruence",
        ),
        LedgerRow::new(
            "an-scaling-congruence",
            verified_status(holds(&arithmetic.an_congruence, ClaimId::An2pScaling)),
            "/results/arithmetic/an_congruence",
        ),
        LedgerRow::new(
            "mod-p2-congruence",
            FormulaStatus::Unverifiable,
            "/results/arithmetic/mod_p2_probe",
        ),
        LedgerRow::new(
            "mod-9-residue",
            verified_status(arithmetic.mod_9_residue.verdict == Verdict::HoldsOnGrid),
            "/results/arithmetic/mod_9_residue",
        ),
    ];
    let regressions = ledger_regressions(&ledger);

    let results = VerifyResults {
        oracle,
        euler_secant,
        bernoulli_tangent,
        stirling_sum,
        kernel_integral,
        laplace_product,
        falling_factorial,
        contour,
        hyper_sinh_literal: hyper_sinh,
        hyper_classical: hyper_classical_rows,
        hyper_calibrated: hyper_calibrated_rows,
        spectral_literal,
        spectral_calibrated,
        fourier,
        mellin,
        asymptotics: AsymptoticSection {
            rows: asym_rows,
            strictly_decreasing_from_2: decreasing,
        },
        arithmetic,
    };
    let envelope = ReportEnvelope::new("verify", params, &results, ledger)?;
    Ok(Run {
        envelope,
        table: None,
        regressions,
    })
}
