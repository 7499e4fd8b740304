//! Congruence claims for Stirling and alternating numbers, tested by reducing
//! exact values over finite grids, plus eventual-period discovery of `A_n mod m`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{residue, zigzag_entringer, StirlingTriangle, ZigzagTable};

pub const COUNTEREXAMPLE_CAP: usize = 100;
pub const MAX_PRIME: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    PaperTouchard,
    VariantTouchard,
    AnPeriodP,
    An2pScaling,
    WilsonStep,
    ModP2Residue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceClaim {
    pub claim_id: ClaimId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsOnGrid,
    Fails,
    Vacuous,
}

/// A grid point where the two sides disagree, with both residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub lhs: u64,
    pub rhs: u64,
}

/// Side data recorded where a claim holds, e.g. an implied correction residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub n: i64,
    pub residue: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub claim: CongruenceClaim,
    pub modulus: u64,
    pub tested: usize,
    pub total_counterexamples: usize,
    pub counterexamples: Vec<Counterexample>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<Observation>,
}

impl CongruenceReport {
    fn collect(claim: CongruenceClaim, modulus: u64) -> ReportBuilder {
        ReportBuilder {
            report: CongruenceReport {
                claim,
                modulus,
                tested: 0,
                total_counterexamples: 0,
                counterexamples: Vec::new(),
                verdict: Verdict::Vacuous,
                observations: Vec::new(),
            },
        }
    }

    pub fn has_counterexample(&self, n: i64, k: Option<i64>) -> bool {
        self.counterexamples.iter().any(|c| c.n == n && c.k == k)
    }
}

struct ReportBuilder {
    report: CongruenceReport,
}

impl ReportBuilder {
    fn check(&mut self, n: i64, k: Option<i64>, lhs: u64, rhs: u64) -> bool {
        self.report.tested += 1;
        if lhs != rhs {
            self.report.total_counterexamples += 1;
            if self.report.counterexamples.len() < COUNTEREXAMPLE_CAP {
                self.report.counterexamples.push(Counterexample { n, k, lhs, rhs });
            }
            false
        } else {
            true
        }
    }

    fn observe(&mut self, n: i64, residue: u64) {
        self.report.observations.push(Observation { n, residue });
    }

    fn finish(mut self) -> CongruenceReport {
        self.report.verdict = if self.report.tested == 0 {
            Verdict::Vacuous
        } else if self.report.total_counterexamples > 0 {
            Verdict::Fails
        } else {
            Verdict::HoldsOnGrid
        };
        self.report
    }
}

/// Trial division, limited to `p <= 10^4`.
pub fn check_prime(p: u64) -> Result<()> {
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if prime {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// One `S(n + n_shift, k + k_shift + k_shift_per_p * p)` term on the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StirlingTerm {
    pub n_shift: i64,
    pub k_shift: i64,
    pub k_shift_per_p: i64,
}

/// Candidate `S(n+p, k) == sum of terms (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TouchardVariant {
    pub id: String,
    pub terms: Vec<StirlingTerm>,
}

impl TouchardVariant {
    pub fn new(id: &str, terms: &[(i64, i64, i64)]) -> Self {
        Self {
            id: id.to_string(),
            terms: terms
                .iter()
                .map(|&(n_shift, k_shift, k_shift_per_p)| StirlingTerm {
                    n_shift,
                    k_shift,
                    k_shift_per_p,
                })
                .collect(),
        }
    }

    /// `S(n+p,k) == S(n,k) + S(n,k-p+1)`.
    pub fn printed() -> Self {
        Self::new("V1", &[(0, 0, 0), (0, 1, -1)])
    }

    /// The default candidate family.
    pub fn family() -> Vec<Self> {
        vec![
            Self::printed(),
            // S(n+p,k) == S(n+1,k) + S(n,k-p)
            Self::new("V2", &[(1, 0, 0), (0, 0, -1)]),
            // S(n+p,k) == S(n,k) + S(n,k-p)
            Self::new("V3", &[(0, 0, 0), (0, 0, -1)]),
        ]
    }

    fn max_n_shift(&self) -> i64 {
        self.terms.iter().map(|t| t.n_shift).max().unwrap_or(0).max(0)
    }
}

fn run_variant(
    variant: &TouchardVariant,
    claim_id: ClaimId,
    p: u64,
    n_max: usize,
    table: &StirlingTriangle,
) -> CongruenceReport {
    let claim = CongruenceClaim {
        claim_id,
        variant: Some(variant.id.clone()),
        p,
        n_max: Some(n_max),
    };
    let mut b = CongruenceReport::collect(claim, p);
    let pi = p as i64;
    for n in 1..=n_max as i64 {
        for k in 0..=n + pi {
            let lhs = residue(&table.get_signed(n + pi, k), p);
            let rhs_value: BigInt = variant
                .terms
                .iter()
                .map(|t| table.get_signed(n + t.n_shift, k + t.k_shift + t.k_shift_per_p * pi))
                .sum();
            b.check(n, Some(k), lhs, residue(&rhs_value, p));
        }
    }
    b.finish()
}

fn touchard_preconditions(p: u64, n_max: usize) -> Result<()> {
    check_prime(p)?;
    if (n_max as u64) < p {
        return Err(Error::InvalidInput(format!(
            "Touchard grid needs n_max >= p (n_max = {n_max}, p = {p})"
        )));
    }
    Ok(())
}

/// The printed form over `1 <= n <= n_max`, `0 <= k <= n + p`.
pub fn touchard_paper_check(p: u64, n_max: usize) -> Result<CongruenceReport> {
    touchard_preconditions(p, n_max)?;
    let table = StirlingTriangle::new(n_max + p as usize);
    Ok(run_variant(
        &TouchardVariant::printed(),
        ClaimId::PaperTouchard,
        p,
        n_max,
        &table,
    ))
}

/// Every variant against every prime; reports come back variant-major, then by prime.
pub fn touchard_variant_scan(
    primes: &[u64],
    n_max: usize,
    variants: &[TouchardVariant],
) -> Result<Vec<CongruenceReport>> {
    for &p in primes {
        touchard_preconditions(p, n_max)?;
    }
    let max_p = primes.iter().copied().max().unwrap_or(0) as usize;
    let max_shift = variants.iter().map(|v| v.max_n_shift()).max().unwrap_or(0) as usize;
    let table = StirlingTriangle::new(n_max + max_p + max_shift);
    let cells: Vec<(&TouchardVariant, u64)> = variants
        .iter()
        .flat_map(|v| primes.iter().map(move |&p| (v, p)))
        .collect();
    Ok(cells
        .par_iter()
        .map(|(v, p)| run_variant(v, ClaimId::VariantTouchard, *p, n_max, &table))
        .collect())
}

/// `(k' + p - 1)! == -k'! (mod p)` for `0 <= k' < p`.
pub fn wilson_step_check(p: u64) -> Result<CongruenceReport> {
    check_prime(p)?;
    let claim = CongruenceClaim {
        claim_id: ClaimId::WilsonStep,
        variant: None,
        p,
        n_max: None,
    };
    let mut b = CongruenceReport::collect(claim, p);
    // factorials mod p up to 2p - 2
    let mut fact = vec![1u64; 2 * p as usize - 1];
    for i in 1..fact.len() {
        fact[i] = fact[i - 1] * (i as u64 % p) % p;
    }
    for k in 0..p as usize {
        let lhs = fact[k + p as usize - 1];
        let rhs = (p - fact[k]) % p;
        b.check(k as i64, None, lhs, rhs);
    }
    Ok(b.finish())
}

fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut result = 1u128 % m;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// Both halves of `A_{n+p} == 2^p A_n == A_n (mod p)` for `0 <= n <= n_max`:
/// first the period claim, then the `2^p` scaling claim.
pub fn an_congruence_check(p: u64, n_max: usize) -> Result<Vec<CongruenceReport>> {
    check_prime(p)?;
    let oracle = zigzag_entringer(n_max + p as usize);
    an_congruence_check_with(&oracle, p, n_max)
}

pub fn an_congruence_check_with(
    oracle: &ZigzagTable,
    p: u64,
    n_max: usize,
) -> Result<Vec<CongruenceReport>> {
    check_prime(p)?;
    let needed = n_max + p as usize;
    if needed > oracle.max_index() {
        return Err(Error::RangeExceeded {
            op: "an_congruence_check",
            index: needed,
            max: oracle.max_index(),
        });
    }
    let claim = |claim_id| CongruenceClaim {
        claim_id,
        variant: None,
        p,
        n_max: Some(n_max),
    };
    let two_p = pow_mod(2, p, p);
    let mut period = CongruenceReport::collect(claim(ClaimId::AnPeriodP), p);
    let mut scaling = CongruenceReport::collect(claim(ClaimId::An2pScaling), p);
    for n in 0..=n_max {
        let shifted = residue(oracle.get(n + p as usize), p);
        let base = residue(oracle.get(n), p);
        period.check(n as i64, None, shifted, base);
        scaling.check(n as i64, None, shifted, two_p * base % p);
    }
    Ok(vec![period.finish(), scaling.finish()])
}

/// Tests the mod-`p` shadow of the mod-`p^2` congruence: `A_{n+p} - 2^p A_n == 0 (mod p)`.
/// Where it holds, `((A_{n+p} - 2^p A_n)/p) mod p` is recorded as the implied
/// correction; where it fails, both residues mod `p^2` are kept.
pub fn mod_p2_residue_probe(p: u64, n_max: usize) -> Result<CongruenceReport> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::EvenPrimeRejected);
    }
    let oracle = zigzag_entringer(n_max + p as usize);
    let p2 = p * p;
    let two_p = BigInt::from(1u8) << p as usize;
    let claim = CongruenceClaim {
        claim_id: ClaimId::ModP2Residue,
        variant: None,
        p,
        n_max: Some(n_max),
    };
    let mut b = CongruenceReport::collect(claim, p2);
    for n in 0..=n_max {
        let shifted = oracle.get(n + p as usize);
        let scaled = &two_p * oracle.get(n);
        let diff: BigInt = shifted - &scaled;
        let divisible = residue(&diff, p) == 0;
        if divisible {
            b.check(n as i64, None, 0, 0);
            b.observe(n as i64, residue(&(diff / p), p));
        } else {
            b.check(n as i64, None, residue(shifted, p2), residue(&scaled, p2));
        }
    }
    Ok(b.finish())
}

/// Single residue check `A_index == expected (mod modulus)`.
pub fn residue_check(index: usize, modulus: u64, expected: u64) -> CongruenceReport {
    let oracle = zigzag_entringer(index);
    let claim = CongruenceClaim {
        claim_id: ClaimId::ModP2Residue,
        variant: Some(format!("A_{index} mod {modulus}")),
        p: modulus,
        n_max: None,
    };
    let mut b = CongruenceReport::collect(claim, modulus);
    b.check(
        index as i64,
        None,
        residue(oracle.get(index), modulus),
        expected % modulus,
    );
    b.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodVerdict {
    Certified,
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub modulus: u64,
    pub n_max: usize,
    pub verdict: PeriodVerdict,
    pub preperiod: Option<usize>,
    pub period: Option<usize>,
    pub residue_cycle: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residue_prefix: Vec<u64>,
}

/// A period is certified only when at least this many full cycles fit after the preperiod.
pub const MIN_CYCLES: usize = 3;
const PREFIX_LEN: usize = 64;

/// Smallest start `mu` with `r[n] == r[n + period]` for all `mu <= n <= len - 1 - period`.
pub fn periodic_start(residues: &[u64], period: usize) -> usize {
    (0..residues.len().saturating_sub(period))
        .rev()
        .find(|&n| residues[n] != residues[n + period])
        .map_or(0, |n| n + 1)
}

/// Minimal `(preperiod, period)` of a residue sequence, if certifiable.
pub fn find_period(residues: &[u64]) -> Option<(usize, usize)> {
    let len = residues.len();
    (1..=len / MIN_CYCLES).find_map(|period| {
        let start = periodic_start(residues, period);
        (len - start >= MIN_CYCLES * period).then_some((start, period))
    })
}

pub fn period_finder(modulus: u64, n_max: usize) -> Result<PeriodReport> {
    let oracle = zigzag_entringer(n_max);
    period_finder_with(&oracle, modulus, n_max)
}

pub fn period_finder_with(oracle: &ZigzagTable, modulus: u64, n_max: usize) -> Result<PeriodReport> {
    if modulus < 2 {
        return Err(Error::InvalidInput("modulus must be at least 2".into()));
    }
    let needed = 4 * modulus as usize;
    if n_max < needed {
        return Err(Error::InsufficientRange {
            modulus,
            n_max,
            needed,
        });
    }
    if n_max > oracle.max_index() {
        return Err(Error::RangeExceeded {
            op: "period_finder",
            index: n_max,
            max: oracle.max_index(),
        });
    }
    let residues: Vec<u64> = oracle.values()[..=n_max]
        .iter()
        .map(|a| residue(a, modulus))
        .collect();
    Ok(match find_period(&residues) {
        Some((start, period)) => PeriodReport {
            modulus,
            n_max,
            verdict: PeriodVerdict::Certified,
            preperiod: Some(start),
            period: Some(period),
            residue_cycle: residues[start..start + period].to_vec(),
            residue_prefix: Vec::new(),
        },
        None => PeriodReport {
            modulus,
            n_max,
            verdict: PeriodVerdict::Vacuous,
            preperiod: None,
            period: None,
            residue_cycle: Vec::new(),
            residue_prefix: residues.iter().copied().take(PREFIX_LEN).collect(),
        },
    })
}
