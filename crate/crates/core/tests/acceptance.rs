//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p zigzag-core --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::Value;

use zigzag_core::arithmetic::{
    an_congruence_check, period_finder, residue_check, touchard_paper_check, wilson_step_check,
    ClaimId, Verdict,
};
use zigzag_core::asymptotics::asymptotic_error_table;
use zigzag_core::exact::{euler_numbers, zigzag_egf_series, zigzag_entringer, TABLE_ONE};
use zigzag_core::quadrature::{
    contour_trapezoid, default_epsilons, fourier_cutoff_scan, hyper_calibrated, hyper_classical,
    hyper_sinh_literal, FourierBehavior, Kernel, Parity, QuadratureConfig,
};
use zigzag_core::report::{cmd_verify, FormulaStatus, VerifyParams};
use zigzag_core::representations::Representations;
use zigzag_core::spectral::{
    mellin_identity_check, spectral_series_calibrated, spectral_series_literal,
};

type Outcome = Result<String, Vec<String>>;

/// Collects failed sub-checks so one criterion reports all of them.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn within(&mut self, started: Instant, limit: Duration) {
        let spent = started.elapsed();
        self.check(spent < limit, || format!("runtime {spent:.2?} exceeds {limit:?}"));
    }

    fn finish(self, summary: String) -> Outcome {
        if self.failures.is_empty() {
            Ok(summary)
        } else {
            Err(self.failures)
        }
    }
}

fn f64_of(v: &BigInt) -> f64 {
    v.to_f64().unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn golden_values() -> Outcome {
    let t = Instant::now();
    let mut c = Checks::default();
    let e = zigzag_entringer(60);
    let g = zigzag_egf_series(60).map_err(|err| vec![err.to_string()])?;
    for (i, &v) in TABLE_ONE.iter().enumerate() {
        c.check(*e.get(i + 1) == BigInt::from(v), || format!("entringer A_{} != {v}", i + 1));
        c.check(*g.get(i + 1) == BigInt::from(v), || format!("egf A_{} != {v}", i + 1));
    }
    c.check(e.values() == g.values(), || "oracles disagree below 61".into());
    c.within(t, Duration::from_secs(1));
    c.finish(format!("A_1..A_10 exact, oracles agree through 60 ({:.0?})", t.elapsed()))
}

fn exact_identities() -> Outcome {
    let t = Instant::now();
    let mut c = Checks::default();
    let reps = Representations::new(41);
    let oracle = zigzag_entringer(41);
    let euler = euler_numbers(20);
    for n in 0..=20 {
        let e = euler.get(2 * n);
        c.check(
            e.is_integer() && e.numer().abs() == *oracle.get(2 * n),
            || format!("A_{} != |E_{}|", 2 * n, 2 * n),
        );
        match reps.bernoulli_tangent(n) {
            Ok(v) => c.check(v == *oracle.get(2 * n + 1), || {
                format!("Bernoulli form differs at A_{}", 2 * n + 1)
            }),
            Err(err) => c.check(false, || err.to_string()),
        }
    }
    c.within(t, Duration::from_secs(5));
    c.finish(format!("Euler through 40, Bernoulli through 41 ({:.0?})", t.elapsed()))
}

fn discrepancy_detection() -> Outcome {
    let mut c = Checks::default();
    let run = cmd_verify(&VerifyParams::new(30)).map_err(|e| vec![e.to_string()])?;
    let env = &run.envelope;
    let status = env
        .formula_status_ledger
        .iter()
        .find(|r| r.equation_id == "stirling-sum")
        .map(|r| r.status);
    c.check(status == Some(FormulaStatus::Mismatch), || {
        format!("stirling-sum ledgered as {status:?}")
    });
    let rows = env.results["stirling_sum"]["per_index"].as_array().cloned().unwrap_or_default();
    let row = |n: usize| rows.iter().find(|r| r["n"] == n).cloned().unwrap_or(Value::Null);
    for (n, lit, a) in [(1, "-1", "1"), (2, "0", "1")] {
        let r = row(n);
        c.check(
            r["match"] == false && r["formula_value"] == lit && r["oracle_value"] == a,
            || format!("missing counterexample n={n} ({lit} vs {a}): {r}"),
        );
    }
    for n in (1..=29).step_by(2) {
        c.check(row(n)["abs_match"] == true, || format!("|literal| != A_{n}"));
    }

    let reps = Representations::new(30);
    for n in 0..=30 {
        let kernel = reps.kernel_integral_exact(n);
        let literal = reps.stirling_sum_literal(n).map(BigRational::from_integer);
        c.check(
            matches!((&kernel, &literal), (Ok(k), Ok(l)) if k == l),
            || format!("kernel integral differs from literal sum at n={n}"),
        );
    }

    for n in 0..=2 {
        let check = reps.falling_factorial_identity_check(n).unwrap();
        c.check(check.holds, || {
            format!(
                "falling-factorial identity false at n={n}: {} vs {}",
                check.stirling_side, check.falling_factorial
            )
        });
    }
    let three = reps.falling_factorial_identity_check(3).unwrap();
    c.check(
        !three.holds
            && three.stirling_side == "-x^3 + 3x^2 - x"
            && three.falling_factorial == "x^3 - 3x^2 + 2x",
        || {
            format!(
                "n=3 expected false with -x^3 + 3x^2 - x vs x^3 - 3x^2 + 2x, got {} ({} vs {})",
                three.holds, three.stirling_side, three.falling_factorial
            )
        },
    );
    c.finish("literal sum mismatch ledgered, kernel = literal through 30, falling factorial as stated".into())
}

fn contour_consistency() -> Outcome {
    let t = Instant::now();
    let mut c = Checks::default();
    let reps = Representations::new(8);
    let mut worst: f64 = 0.0;
    for n in 0..=8 {
        let literal = f64_of(&reps.stirling_sum_literal(n).unwrap());
        let at = |nodes| contour_trapezoid(n, 1.0, nodes).unwrap();
        let r128 = (at(128).coefficient_scaled - literal).abs();
        worst = worst.max(r128);
        c.check(r128 <= 1e-7 * literal.abs().max(1.0), || {
            format!("n={n}: residual {r128:e} at 128 nodes")
        });
        let mut nodes = 8;
        while nodes < 256 {
            let coarse = at(nodes);
            let fine = at(2 * nodes);
            let rc = (coarse.coefficient_scaled - literal).abs();
            let rf = (fine.coefficient_scaled - literal).abs();
            if rc <= coarse.rounding_floor {
                break;
            }
            c.check(rf * 1e3 <= rc || rf <= fine.rounding_floor, || {
                format!("n={n}: {nodes}->{} nodes only {rc:e} -> {rf:e}", 2 * nodes)
            });
            nodes *= 2;
        }
    }
    c.within(t, Duration::from_secs(1));
    c.finish(format!("n <= 8 within 1e-7 at 128 nodes, max residual {worst:.1e}"))
}

fn calibration() -> Outcome {
    let t = Instant::now();
    let mut c = Checks::default();
    let cfg = QuadratureConfig::default();
    let oracle = zigzag_entringer(25);
    let a = |i: usize| f64_of(oracle.get(i));
    let mut checked = 0;
    for idx in (0..=20).filter(|&i| a(i) <= 1e14) {
        let parity = if idx % 2 == 0 { Parity::Even } else { Parity::Odd };
        let q = hyper_calibrated(idx / 2, parity, &cfg).unwrap().value;
        c.check(rel(q, a(idx)) <= 1e-9, || format!("hyper_calibrated A_{idx}: {q}"));
        let ratio = hyper_classical(idx / 2, parity, &cfg).unwrap().value / a(idx);
        let expected = 2f64.powi(1 - idx as i32);
        c.check(rel(ratio, expected) <= 1e-8, || {
            format!("hyper_classical ratio at A_{idx}: {ratio} vs {expected}")
        });
        checked = idx;
    }
    c.check(checked >= 11, || "calibrated range stops before A_11".into());
    for n in 0..=12 {
        let idx = 2 * n + 1;
        let pattern = PI.powi(idx as i32);
        if a(idx) <= 1e14 {
            let s = spectral_series_calibrated(n).unwrap();
            c.check(rel(s, a(idx)) <= 1e-9, || format!("spectral_calibrated A_{idx}: {s}"));
        }
        let lit = hyper_sinh_literal(n, &cfg).unwrap().value / a(idx);
        c.check(rel(lit, pattern) <= 1e-8, || format!("hyper_sinh ratio n={n}: {lit}"));
        let ser = spectral_series_literal(n).unwrap() / a(idx);
        c.check(rel(ser, pattern) <= 1e-8, || format!("spectral ratio n={n}: {ser}"));
    }
    for (kernel, first) in [(Kernel::Cosh, 1), (Kernel::Sinh, 2)] {
        for s in first..=20 {
            let m = mellin_identity_check(s, kernel, &cfg).unwrap();
            c.check(m.passes && m.rel_deviation <= 1e-8, || format!("Mellin {kernel:?} s={s}: {m:?}"));
        }
    }
    c.within(t, Duration::from_secs(10));
    c.finish(format!(
        "calibrated forms to 1e-9 through A_{checked}, literal ratios and Mellin to 1e-8 ({:.0?})",
        t.elapsed()
    ))
}

fn fourier_scan() -> Outcome {
    let mut c = Checks::default();
    let eps = default_epsilons();
    let zero = fourier_cutoff_scan(0, &eps, 1.0).unwrap();
    match zero.behavior {
        FourierBehavior::Divergent {
            ref law,
            increment_ratio,
            ..
        } => c.check(
            law == "logarithmic" && (increment_ratio - 1.0).abs() <= 0.1,
            || format!("n=0 growth {law}, increment ratio {increment_ratio}"),
        ),
        ref other => c.check(false, || format!("n=0 classified {other:?}")),
    }
    let one = fourier_cutoff_scan(1, &eps, 1.0).unwrap();
    match one.behavior {
        FourierBehavior::Convergent { extrapolated, .. } => c.check(
            (extrapolated - (1.0 + 4.0 / PI)).abs() <= 1e-6 && !one.matches_oracle,
            || format!("n=1 limit {extrapolated}, flagged equal to A_1: {}", one.matches_oracle),
        ),
        ref other => c.check(false, || format!("n=1 classified {other:?}")),
    }
    c.finish("n=0 logarithmic divergence, n=1 converges to 1 + 4/pi != A_1".into())
}

fn asymptotics() -> Outcome {
    let mut c = Checks::default();
    let oracle = zigzag_entringer(60);
    let rows = asymptotic_error_table(60, &oracle).unwrap();
    let at_ten = rows[9].rel_error;
    c.check((3e-4..=7e-4).contains(&at_ten), || {
        format!("rel error at n=10 is {at_ten:.6e}, outside [3e-4, 7e-4]")
    });
    for w in rows.windows(2).filter(|w| w[0].n >= 2) {
        c.check(w[1].rel_error < w[0].rel_error, || {
            format!("rel error not decreasing at n={}", w[1].n)
        });
    }
    c.finish(format!("rel error at n=10 is {at_ten:.3e}, strictly decreasing 2..60"))
}

fn arithmetic() -> Outcome {
    let t = Instant::now();
    let mut c = Checks::default();
    let touchard = touchard_paper_check(3, 30).unwrap();
    c.check(
        touchard.verdict == Verdict::Fails && touchard.has_counterexample(2, Some(2)),
        || "printed Touchard form lacks the (p=3, n=2, k=2) counterexample".into(),
    );
    for p in [3u64, 5, 7] {
        let w = wilson_step_check(p).unwrap();
        let failing: Vec<i64> = w.counterexamples.iter().map(|x| x.n).collect();
        c.check(failing == (1..p as i64).collect::<Vec<_>>(), || {
            format!("Wilson step at p={p} fails at k' = {failing:?}")
        });
    }
    for (p, n) in [(3u64, 1i64), (5, 2)] {
        let reports = an_congruence_check(p, 30).unwrap();
        let period = reports.iter().find(|r| r.claim.claim_id == ClaimId::AnPeriodP).unwrap();
        c.check(
            period.verdict == Verdict::Fails && period.has_counterexample(n, None),
            || format!("A_n congruence lacks the (p={p}, n={n}) counterexample"),
        );
    }
    let two = period_finder(2, 200).unwrap();
    c.check(two.period == Some(2) && two.preperiod == Some(2), || {
        format!("mod 2: period {:?}, preperiod {:?}", two.period, two.preperiod)
    });
    let three = period_finder(3, 200).unwrap();
    c.check(three.period == Some(4), || format!("mod 3: period {:?}", three.period));
    let nine = residue_check(7, 9, 2);
    c.check(nine.verdict == Verdict::HoldsOnGrid, || "A_7 mod 9 != 2".into());
    c.within(t, Duration::from_secs(5));
    c.finish(format!("counterexamples found, periods certified ({:.0?})", t.elapsed()))
}

fn determinism(suite_start: Instant) -> Outcome {
    let mut c = Checks::default();
    let first = cmd_verify(&VerifyParams::new(10)).unwrap().envelope.to_json();
    let second = cmd_verify(&VerifyParams::new(10)).unwrap().envelope.to_json();
    c.check(first == second, || "verify output differs between runs".into());
    c.within(suite_start, Duration::from_secs(60));
    c.finish(format!(
        "verify output byte-identical ({} bytes), suite {:.1?}",
        first.len(),
        suite_start.elapsed()
    ))
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 9] = [
        ("golden values", Box::new(golden_values)),
        ("exact identities", Box::new(exact_identities)),
        ("discrepancy detection", Box::new(discrepancy_detection)),
        ("contour consistency", Box::new(contour_consistency)),
        ("quadrature/series calibration", Box::new(calibration)),
        ("Fourier scan", Box::new(fourier_scan)),
        ("asymptotics", Box::new(asymptotics)),
        ("arithmetic lab", Box::new(arithmetic)),
        ("determinism", Box::new(move || determinism(start))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(summary) => println!("criterion {}: PASS {name}: {summary}", i + 1),
            Err(failures) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {}", i + 1, failures.join("; "));
            }
        }
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
