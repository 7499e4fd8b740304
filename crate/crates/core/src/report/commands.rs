use std::f64::consts::PI;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use super::{csv_float, LedgerRow, ReportEnvelope, Run, Table};
use crate::arithmetic::{
    an_congruence_check, mod_p2_residue_probe, period_finder_with, touchard_paper_check,
    touchard_variant_scan, wilson_step_check, ClaimId, CongruenceReport, PeriodReport,
    PeriodVerdict, TouchardVariant, Verdict,
};
use crate::asymptotics::asymptotic_error_table;
use crate::encode;
use crate::error::{Error, Result};
use crate::exact::{zigzag_entringer, Oracle, ZigzagTable, TABLE_ONE};
use crate::quadrature::{
    contour_trapezoid, default_epsilons, default_nodes, fourier_cutoff_scan, hyper_calibrated,
    hyper_classical, hyper_sinh_literal, FourierBehavior, Kernel, Parity, QuadratureConfig,
    QuadratureResult, DEFAULT_RADIUS,
};
use crate::representations::Representations;
use crate::report::FormulaStatus;
use crate::spectral::{
    dirichlet_beta, half_integer_zeta, mellin_identity_check, spectral_series_calibrated,
    spectral_series_literal,
};

/// Relative agreement required of calibrated floating-point forms.
pub(crate) const CALIBRATED_TOL: f64 = 1e-9;
/// Relative agreement required of a recorded mismatch ratio.
pub(crate) const RATIO_TOL: f64 = 1e-8;
/// Largest `n` whose contour value is checked against the literal sum.
pub(crate) const CONTOUR_CHECK_MAX: usize = 8;
/// Absolute/relative tolerance of the contour check.
pub(crate) const CONTOUR_TOL: f64 = 1e-7;

pub(crate) fn to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

pub(crate) fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Expected `hyper_classical / A` at zigzag index `idx`.
pub(crate) fn classical_ratio(idx: usize) -> f64 {
    2f64.powi(1 - idx as i32)
}

fn status(ok: bool, pass: FormulaStatus) -> FormulaStatus {
    if ok {
        pass
    } else {
        FormulaStatus::Mismatch
    }
}

// ---------------------------------------------------------------- compute

#[derive(Serialize)]
struct ComputeParams {
    max_index: usize,
    oracle: &'static str,
}

#[derive(Serialize)]
struct ComputeResults<'a> {
    provenance: &'static str,
    #[serde(serialize_with = "encode::big_vec")]
    values: &'a [BigInt],
    other_oracle_agrees: bool,
}

pub fn cmd_compute(max_index: usize, oracle: Oracle) -> Result<Run> {
    let table = ZigzagTable::compute(max_index, oracle)?;
    let other = match oracle {
        Oracle::Entringer => Oracle::EgfSeries,
        Oracle::EgfSeries => Oracle::Entringer,
    };
    let agrees = ZigzagTable::compute(max_index, other)?.values() == table.values();
    let prefix_ok = table
        .values()
        .iter()
        .skip(1)
        .zip(TABLE_ONE)
        .all(|(a, b)| *a == BigInt::from(b))
        && table.get(0) == &BigInt::from(1);
    let mut regressions = Vec::new();
    if !prefix_ok {
        regressions.push("compute: leading values differ from the frozen table".to_string());
    }
    if !agrees {
        regressions.push("compute: the two oracles disagree".to_string());
    }
    let ledger = vec![
        LedgerRow::new(
            "egf-definition",
            status(agrees, FormulaStatus::Verified),
            "/results/other_oracle_agrees",
        ),
        LedgerRow::new(
            "table-values",
            status(prefix_ok, FormulaStatus::Verified),
            "/results/values",
        ),
    ];
    let envelope = ReportEnvelope::new(
        "compute",
        &ComputeParams {
            max_index,
            oracle: oracle.as_str(),
        },
        &ComputeResults {
            provenance: table.provenance().as_str(),
            values: table.values(),
            other_oracle_agrees: agrees,
        },
        ledger,
    )?;
    let rows = table
        .values()
        .iter()
        .enumerate()
        .map(|(n, v)| vec![n.to_string(), v.to_string()])
        .collect();
    Ok(Run {
        envelope,
        table: Some(Table {
            header: vec!["n", "a_n"],
            rows,
        }),
        regressions,
    })
}

// ------------------------------------------------------------- congruence

#[derive(Serialize)]
struct CongruenceParams<'a> {
    primes: &'a [u64],
    n_max: usize,
}

#[derive(Serialize)]
struct CongruenceResults {
    touchard_printed: Vec<CongruenceReport>,
    touchard_variants: Vec<CongruenceReport>,
    wilson_step: Vec<CongruenceReport>,
    an_congruence: Vec<CongruenceReport>,
    mod_p2_probe: Vec<CongruenceReport>,
}

/// Grid size from which frozen congruence verdicts apply.
const FROZEN_CONGRUENCE_N: usize = 30;
const FROZEN_PRIMES: [u64; 3] = [3, 5, 7];

pub fn cmd_congruence(primes: &[u64], n_max: usize) -> Result<Run> {
    if primes.is_empty() {
        return Err(Error::InvalidInput("at least one prime is required".into()));
    }
    let touchard_printed = primes
        .iter()
        .map(|&p| touchard_paper_check(p, n_max))
        .collect::<Result<Vec<_>>>()?;
    let touchard_variants = touchard_variant_scan(primes, n_max, &TouchardVariant::family())?;
    let wilson = primes
        .iter()
        .map(|&p| wilson_step_check(p))
        .collect::<Result<Vec<_>>>()?;
    let mut an = Vec::new();
    for &p in primes {
        an.extend(an_congruence_check(p, n_max)?);
    }
    let probe = primes
        .iter()
        .filter(|&&p| p != 2)
        .map(|&p| mod_p2_residue_probe(p, n_max))
        .collect::<Result<Vec<_>>>()?;

    let holds = |reports: &[CongruenceReport], id: ClaimId| {
        reports
            .iter()
            .filter(|r| r.claim.claim_id == id)
            .all(|r| r.verdict == Verdict::HoldsOnGrid)
    };
    let ledger = vec![
        LedgerRow::new(
            "touchard-congruence",
            status(holds(&touchard_printed, ClaimId::PaperTouchard), FormulaStatus::Verified),
            "/results/touchard_printed",
        ),
        LedgerRow::new(
            "wilson-step",
            status(holds(&wilson, ClaimId::WilsonStep), FormulaStatus::Verified),
            "/results/wilson_step",
        ),
        LedgerRow::new(
            "an-period-congruence",
            status(holds(&an, ClaimId::AnPeriodP), FormulaStatus::Verified),
            "/results/an_congruence",
        ),
        LedgerRow::new(
            "an-scaling-congruence",
            status(holds(&an, ClaimId::An2pScaling), FormulaStatus::Verified),
            "/results/an_congruence",
        ),
        LedgerRow::new(
            "mod-p2-congruence",
            FormulaStatus::Unverifiable,
            "/results/mod_p2_probe",
        ),
    ];

    let mut regressions = Vec::new();
    if n_max >= FROZEN_CONGRUENCE_N {
        let mut expect = |ok: bool, what: String| {
            if !ok {
                regressions.push(what);
            }
        };
        for r in &touchard_printed {
            if FROZEN_PRIMES.contains(&r.claim.p) {
                expect(
                    r.verdict == Verdict::Fails,
                    format!("printed Touchard form no longer fails at p={}", r.claim.p),
                );
            }
        }
        for r in &touchard_variants {
            let v2 = r.claim.variant.as_deref() == Some("V2");
            if v2 && FROZEN_PRIMES.contains(&r.claim.p) {
                expect(
                    r.verdict == Verdict::HoldsOnGrid,
                    format!("variant V2 no longer holds at p={}", r.claim.p),
                );
            }
        }
        for r in &wilson {
            if FROZEN_PRIMES.contains(&r.claim.p) {
                let only_zero = r.counterexamples.iter().all(|c| c.n != 0)
                    && r.total_counterexamples as u64 == r.claim.p - 1;
                expect(
                    only_zero,
                    format!("Wilson step pattern changed at p={}", r.claim.p),
                );
            }
        }
        for r in &an {
            if FROZEN_PRIMES.contains(&r.claim.p) {
                expect(
                    r.verdict == Verdict::Fails,
                    format!("{:?} no longer fails at p={}", r.claim.claim_id, r.claim.p),
                );
            }
        }
    }

    let envelope = ReportEnvelope::new(
        "congruence",
        &CongruenceParams { primes, n_max },
        &CongruenceResults {
            touchard_printed,
            touchard_variants,
            wilson_step: wilson,
            an_congruence: an,
            mod_p2_probe: probe,
        },
        ledger,
    )?;
    Ok(Run {
        envelope,
        table: None,
        regressions,
    })
}

// ----------------------------------------------------------------- period

/// `(modulus, preperiod, period)` certified at the freeze run.
const FROZEN_PERIODS: [(u64, usize, usize); 8] = [
    (2, 2, 2),
    (3, 1, 4),
    (4, 4, 2),
    (5, 1, 4),
    (7, 1, 12),
    (9, 2, 12),
    (25, 2, 20),
    (27, 3, 36),
];

#[derive(Serialize)]
struct PeriodParams<'a> {
    moduli: &'a [u64],
    n_max: usize,
}

#[derive(Serialize)]
struct PeriodResults {
    reports: Vec<PeriodReport>,
}

pub fn cmd_period(moduli: &[u64], n_max: usize) -> Result<Run> {
    if moduli.is_empty() {
        return Err(Error::InvalidInput("at least one modulus is required".into()));
    }
    let oracle = zigzag_entringer(n_max);
    let reports = moduli
        .iter()
        .map(|&m| period_finder_with(&oracle, m, n_max))
        .collect::<Result<Vec<_>>>()?;
    let mut regressions = Vec::new();
    for r in &reports {
        let frozen = FROZEN_PERIODS.iter().find(|f| f.0 == r.modulus);
        if let (Some(&(m, pre, per)), PeriodVerdict::Certified) = (frozen, r.verdict) {
            if r.preperiod != Some(pre) || r.period != Some(per) {
                regressions.push(format!(
                    "period mod {m}: frozen (preperiod {pre}, period {per}), now ({:?}, {:?})",
                    r.preperiod, r.period
                ));
            }
        }
    }
    let opt = |v: Option<usize>| v.map_or_else(String::new, |x| x.to_string());
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.modulus.to_string(),
                r.n_max.to_string(),
                match r.verdict {
                    PeriodVerdict::Certified => "certified".to_string(),
                    PeriodVerdict::Vacuous => "vacuous".to_string(),
                },
                opt(r.preperiod),
                opt(r.period),
                r.residue_cycle
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            ]
        })
        .collect();
    let envelope = ReportEnvelope::new(
        "period",
        &PeriodParams { moduli, n_max },
        &PeriodResults { reports },
        Vec::new(),
    )?;
    Ok(Run {
        envelope,
        table: Some(Table {
            header: vec!["modulus", "n_max", "verdict", "preperiod", "period", "residue_cycle"],
            rows,
        }),
        regressions,
    })
}

// ------------------------------------------------------------ asymptotics

#[derive(Serialize)]
struct AsymptoticParams {
    max_index: usize,
}

pub fn cmd_asymptotics(max_index: usize) -> Result<Run> {
    let oracle = zigzag_entringer(max_index);
    let rows = asymptotic_error_table(max_index, &oracle)?;
    let decreasing = rows
        .windows(2)
        .filter(|w| w[0].n >= 2)
        .all(|w| w[1].rel_error < w[0].rel_error);
    let regressions = if decreasing {
        Vec::new()
    } else {
        vec!["asymptotics: rel_error is not strictly decreasing from n = 2".to_string()]
    };
    let table = Table {
        header: vec!["n", "estimate_log", "exact_log", "rel_error"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    csv_float(r.estimate_log),
                    csv_float(r.exact_log),
                    csv_float(r.rel_error),
                ]
            })
            .collect(),
    };
    let envelope = ReportEnvelope::new(
        "asymptotics",
        &AsymptoticParams { max_index },
        &json!({ "rows": rows, "strictly_decreasing_from_2": decreasing }),
        vec![LedgerRow::new(
            "asymptotic-law",
            status(decreasing, FormulaStatus::Verified),
            "/results/strictly_decreasing_from_2",
        )],
    )?;
    Ok(Run {
        envelope,
        table: Some(table),
        regressions,
    })
}

// ------------------------------------------------------------- quadrature

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureOp {
    HyperSinhLiteral,
    HyperClassical,
    HyperCalibrated,
    MellinCheck,
    Contour,
    Fourier,
    SpectralLiteral,
    SpectralCalibrated,
    HalfIntegerZeta,
    DirichletBeta,
}

impl QuadratureOp {
    pub const ALL: [QuadratureOp; 10] = [
        QuadratureOp::HyperSinhLiteral,
        QuadratureOp::HyperClassical,
        QuadratureOp::HyperCalibrated,
        QuadratureOp::MellinCheck,
        QuadratureOp::Contour,
        QuadratureOp::Fourier,
        QuadratureOp::SpectralLiteral,
        QuadratureOp::SpectralCalibrated,
        QuadratureOp::HalfIntegerZeta,
        QuadratureOp::DirichletBeta,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QuadratureOp::HyperSinhLiteral => "hyper_sinh_literal",
            QuadratureOp::HyperClassical => "hyper_classical",
            QuadratureOp::HyperCalibrated => "hyper_calibrated",
            QuadratureOp::MellinCheck => "mellin_check",
            QuadratureOp::Contour => "contour",
            QuadratureOp::Fourier => "fourier",
            QuadratureOp::SpectralLiteral => "spectral_literal",
            QuadratureOp::SpectralCalibrated => "spectral_calibrated",
            QuadratureOp::HalfIntegerZeta => "half_integer_zeta",
            QuadratureOp::DirichletBeta => "dirichlet_beta",
        }
    }

    /// Whether the op takes a parity (`even`/`odd`) or kernel (`sinh`/`cosh`) argument.
    pub fn variant_kind(self) -> Option<&'static str> {
        match self {
            QuadratureOp::HyperClassical | QuadratureOp::HyperCalibrated => Some("parity"),
            QuadratureOp::MellinCheck => Some("kernel"),
            _ => None,
        }
    }
}

impl FromStr for QuadratureOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuadratureOp::ALL
            .into_iter()
            .find(|op| op.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown quadrature op {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureParams {
    pub op: QuadratureOp,
    /// `n` for the hyperbolic, spectral, contour and Fourier ops; `s` for series and Mellin ops.
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Kernel>,
    pub rel_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
}

impl QuadratureParams {
    pub fn new(op: QuadratureOp, index: usize) -> Self {
        QuadratureParams {
            op,
            index,
            parity: None,
            kernel: None,
            rel_tol: QuadratureConfig::default().rel_tol,
            nodes: None,
            radius: None,
        }
    }
}

fn quad_json(q: &QuadratureResult) -> Value {
    json!({
        "value": q.value,
        "error_estimate": q.error_estimate,
        "evaluations": q.evaluations,
        "cutoff": q.cutoff,
    })
}

fn need<T>(value: Option<T>, what: &str, op: QuadratureOp) -> Result<T> {
    value.ok_or_else(|| Error::InvalidInput(format!("{} needs a {what}", op.as_str())))
}

fn to_u32(index: usize) -> Result<u32> {
    u32::try_from(index).map_err(|_| Error::InvalidInput(format!("s = {index} is too large")))
}

pub fn cmd_quadrature(params: &QuadratureParams) -> Result<Run> {
    let cfg = QuadratureConfig::default().with_rel_tol(params.rel_tol);
    cfg.validate()?;
    let n = params.index;
    let op = params.op;
    let oracle_at = |idx: usize| to_f64(zigzag_entringer(idx).get(idx));
    let mut regressions = Vec::new();
    let mut expect = |ok: bool, what: String| {
        if !ok {
            regressions.push(what);
        }
    };
    let results = match op {
        QuadratureOp::HyperSinhLiteral => {
            let q = hyper_sinh_literal(n, &cfg)?;
            let a = oracle_at(2 * n + 1);
            let ratio = q.value / a;
            let expected = PI.powi(2 * n as i32 + 1);
            expect(
                rel(ratio, expected) <= RATIO_TOL,
                format!("hyper_sinh_literal ratio {ratio} vs pi^{}", 2 * n + 1),
            );
            json!({ "quadrature": quad_json(&q), "oracle_index": 2 * n + 1, "oracle": a,
                    "ratio": ratio, "expected_ratio": expected })
        }
        QuadratureOp::HyperClassical | QuadratureOp::HyperCalibrated => {
            let parity = need(params.parity, "parity (even or odd)", op)?;
            let idx = parity.index(n);
            let a = oracle_at(idx);
            if op == QuadratureOp::HyperClassical {
                let q = hyper_classical(n, parity, &cfg)?;
                let ratio = q.value / a;
                let expected = classical_ratio(idx);
                expect(
                    rel(ratio, expected) <= RATIO_TOL,
                    format!("hyper_classical ratio {ratio} vs {expected}"),
                );
                json!({ "quadrature": quad_json(&q), "oracle_index": idx, "oracle": a,
                        "ratio": ratio, "expected_ratio": expected })
            } else {
                let q = hyper_calibrated(n, parity, &cfg)?;
                let rel_error = rel(q.value, a);
                expect(
                    rel_error <= CALIBRATED_TOL,
                    format!("hyper_calibrated rel error {rel_error:e} at index {idx}"),
                );
                json!({ "quadrature": quad_json(&q), "oracle_index": idx, "oracle": a,
                        "rel_error": rel_error })
            }
        }
        QuadratureOp::MellinCheck => {
            let kernel = need(params.kernel, "kernel (sinh or cosh)", op)?;
            let check = mellin_identity_check(to_u32(n)?, kernel, &cfg)?;
            expect(check.passes, format!("Mellin check failed: {check:?}"));
            json!(check)
        }
        QuadratureOp::Contour => {
            let radius = params.radius.unwrap_or(DEFAULT_RADIUS);
            let nodes = params.nodes.unwrap_or_else(|| default_nodes(n));
            let c = contour_trapezoid(n, radius, nodes)?;
            let reps = Representations::new(n);
            let literal = to_f64(&reps.stirling_sum_literal(n)?);
            let residual = (c.coefficient_scaled - literal).abs();
            if n <= CONTOUR_CHECK_MAX && nodes >= default_nodes(n) {
                expect(
                    residual <= CONTOUR_TOL * literal.abs().max(1.0),
                    format!("contour residual {residual:e} at n={n}"),
                );
            }
            json!({ "contour": c, "literal": literal, "residual": residual,
                    "oracle": oracle_at(n) })
        }
        QuadratureOp::Fourier => {
            let scan = fourier_cutoff_scan(n, &default_epsilons(), oracle_at(n))?;
            let divergent = matches!(scan.behavior, FourierBehavior::Divergent { .. });
            expect(
                divergent == n.is_multiple_of(2),
                format!("Fourier classification changed at n={n}"),
            );
            if n == 1 {
                if let FourierBehavior::Convergent { extrapolated, .. } = scan.behavior {
                    expect(
                        (extrapolated - (1.0 + 4.0 / PI)).abs() <= 1e-6,
                        format!("Fourier n=1 limit {extrapolated}"),
                    );
                }
            }
            json!(scan)
        }
        QuadratureOp::SpectralLiteral => {
            let value = spectral_series_literal(n)?;
            let a = oracle_at(2 * n + 1);
            let ratio = value / a;
            let expected = PI.powi(2 * n as i32 + 1);
            expect(
                rel(ratio, expected) <= RATIO_TOL,
                format!("spectral_literal ratio {ratio} vs pi^{}", 2 * n + 1),
            );
            json!({ "value": value, "oracle_index": 2 * n + 1, "oracle": a,
                    "ratio": ratio, "expected_ratio": expected })
        }
        QuadratureOp::SpectralCalibrated => {
            let value = spectral_series_calibrated(n)?;
            let a = oracle_at(2 * n + 1);
            let rel_error = rel(value, a);
            expect(
                rel_error <= CALIBRATED_TOL,
                format!("spectral_calibrated rel error {rel_error:e}"),
            );
            json!({ "value": value, "oracle_index": 2 * n + 1, "oracle": a,
                    "rel_error": rel_error })
        }
        QuadratureOp::HalfIntegerZeta => json!(half_integer_zeta(to_u32(n)?, params.rel_tol)?),
        QuadratureOp::DirichletBeta => json!(dirichlet_beta(to_u32(n)?, params.rel_tol)?),
    };
    let envelope = ReportEnvelope::new("quadrature", params, &results, Vec::new())?;
    Ok(Run {
        envelope,
        table: None,
        regressions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_examples() {
        let run = cmd_compute(10, Oracle::Entringer).unwrap();
        let values = &run.envelope.results["values"];
        assert_eq!(values[10], "50521");
        assert_eq!(values[9], "7936");
        let egf = cmd_compute(10, Oracle::EgfSeries).unwrap();
        assert_eq!(egf.envelope.results["values"], *values);
        let zero = cmd_compute(0, Oracle::Entringer).unwrap();
        assert_eq!(zero.envelope.results["values"], json!(["1"]));
        assert!(run.regressions.is_empty());
    }

    #[test]
    fn period_example() {
        let run = cmd_period(&[2, 3], 200).unwrap();
        let reports = &run.envelope.results["reports"];
        assert_eq!(reports[0]["period"], 2);
        assert_eq!(reports[1]["period"], 4);
        assert!(run.regressions.is_empty());
        let csv = run.table.unwrap().to_csv();
        assert!(csv.starts_with("modulus,n_max,verdict"));
        assert!(csv.contains("3,200,certified,1,4,1 1 2 2"));
    }

    #[test]
    fn quadrature_example() {
        let mut p = QuadratureParams::new(QuadratureOp::HyperCalibrated, 1);
        p.parity = Some(Parity::Odd);
        let run = cmd_quadrature(&p).unwrap();
        let v = run.envelope.results["quadrature"]["value"].as_f64().unwrap();
        assert!((v - 2.0).abs() < 1e-9);
        assert!(run.regressions.is_empty());
        let missing = QuadratureParams::new(QuadratureOp::HyperCalibrated, 1);
        assert!(cmd_quadrature(&missing).is_err());
    }

    #[test]
    fn asymptotics_csv_is_monotone() {
        let run = cmd_asymptotics(20).unwrap();
        let table = run.table.unwrap();
        assert_eq!(table.rows.len(), 20);
        let errs: Vec<f64> = table.rows.iter().map(|r| r[3].parse().unwrap()).collect();
        assert!(errs[1..].windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn op_names_round_trip() {
        for op in QuadratureOp::ALL {
            assert_eq!(op.as_str().parse::<QuadratureOp>().unwrap(), op);
        }
    }
}
