//! One line per acceptance criterion. Run with
//! `cargo test -p hankel-dirichlet --test acceptance -- --nocapture`.
//!
//! Criteria whose literal statement cannot hold print FAIL together with the
//! range that does hold; only that range is asserted. Criterion 8 is soft and
//! reported without being asserted.

use std::time::Instant;

use hankel_core::bounds::{
    decay_row, envelope_check, factorial_bound_check, monien_ratio_check, zagier_fit, DecayMode, MonienPairing,
    RowStatus,
};
use hankel_core::hankel::{
    certify_positive, compute_det, det_exact_rational, monien_term, Certificate, DetResult, EngineChoice, HankelError,
    HankelQuery,
};
use hankel_core::numerics::PrecisionChoice;
use hankel_core::rationality::{growth_verifier, integrality_check, rational_values};
use hankel_core::sequences::{calibrate_ratio_bounds, ratio_limit_statistic, SeriesSpec};
use hankel_core::{Ball, Sign};
use hankel_dirichlet::selftest::{run_selftest, SelftestOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

struct Outcome {
    pass: bool,
    attainable: bool,
    soft: bool,
    detail: String,
}

impl Outcome {
    fn hard(pass: bool, detail: String) -> Self {
        Outcome { pass, attainable: pass, soft: false, detail }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn within(b: &Ball, target: f64, tol: f64) -> bool {
    let lo = Ball::from_rational(&BigRational::from_float(target - tol).unwrap(), 128);
    let hi = Ball::from_rational(&BigRational::from_float(target + tol).unwrap(), 128);
    b.certified_gt(&lo) && b.certified_lt(&hi)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let report = run_selftest(&SelftestOptions { seed: 20240601, tamper_zeta: None });
    let secs = start.elapsed().as_secs_f64();
    let suites: Vec<_> =
        report.suites.iter().filter(|s| s.suite == "dodgson_random" || s.suite == "dodgson_catalog").collect();
    let passed: usize = suites.iter().map(|s| s.passed).sum();
    let failed: usize = suites.iter().map(|s| s.failed).sum();
    let random = suites.iter().find(|s| s.suite == "dodgson_random").map_or(0, |s| s.passed + s.failed);
    let ok = failed == 0 && random == 50 && passed == 50 + 27 && secs < 60.0;
    Outcome::hard(ok, format!("{passed} residuals contain 0, {failed} do not ({random} random sequences), {secs:.2}s"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut strict = 0;
    let mut equal_at_one = 0;
    let mut positive = true;
    let mut strict_from_two = true;
    for n in 1..=8usize {
        for r in 0..=4u64 {
            let c = factorial_bound_check(n, r).unwrap();
            positive &= c.positive;
            if c.holds {
                strict += 1;
            } else if n == 1 && c.det == c.bound {
                equal_at_one += 1;
            } else {
                strict_from_two = false;
            }
        }
    }
    let h3 = factorial_bound_check(3, 0).unwrap().det;
    let h4 = factorial_bound_check(4, 0).unwrap().det;
    let brute = |n: usize| -> BigInt {
        let spec = SeriesSpec::factorial_seq();
        let q = HankelQuery::new(&spec, n, 0).unwrap();
        det_exact_rational(&q).unwrap().exact.unwrap().to_integer()
    };
    let oracle = h3 == BigInt::from(4) && h4 == BigInt::from(144) && brute(3) == h3 && brute(4) == h4;
    let literal = positive && oracle && strict == 40;
    let attainable = positive && oracle && strict_from_two && equal_at_one == 5;
    Outcome {
        pass: literal,
        attainable,
        soft: false,
        detail: format!(
            "strict bound holds for 2 <= n <= 8 ({strict}/40 rows); n = 1 gives equality r! = r! in {equal_at_one} rows; \
             H_3 = {h3}, H_4 = {h4}; {:.2}s",
            start.elapsed().as_secs_f64()
        ),
    }
}

fn criterion_3() -> Outcome {
    let specs =
        [SeriesSpec::zeta(), SeriesSpec::zeta_ap(2, 1).unwrap(), SeriesSpec::zeta_minus_1(), SeriesSpec::pow2()];
    let mut certified = 0;
    for spec in &specs {
        for n in 1..=12 {
            for r in 0..=3 {
                let q = HankelQuery::new(spec, n, r).unwrap();
                if matches!(certify_positive(&q), Certificate::Positive { .. }) {
                    certified += 1;
                }
            }
        }
    }
    let zeta = SeriesSpec::zeta();
    let term = monien_term(&zeta, &[1, 2], 2, 0).unwrap();
    let q = HankelQuery::new(&zeta, 2, 0).unwrap();
    let det = compute_det(&q, EngineChoice::Lu, &PrecisionChoice::default().policy_for(2)).unwrap();
    let below = det.value.certified_gt(&Ball::from_rational(&term, 128));
    let geo2 = SeriesSpec::geo2();
    let vanishing = (3..=10).all(|n| {
        let q = HankelQuery::new(&geo2, n, 0).unwrap();
        det_exact_rational(&q).unwrap().exact.is_some_and(|v| v.is_zero())
    });
    let ok = certified == 4 * 12 * 4 && term == rat(1, 16) && below && vanishing;
    Outcome::hard(
        ok,
        format!(
            "{certified}/192 positive certificates; single tuple term {term} below H_2^(0)[zeta] = {:.6}: {below}; \
             geo2 H_n^(0) = 0 for 3 <= n <= 10: {vanishing}",
            det.value.to_f64()
        ),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let zeta = SeriesSpec::zeta();
    let mode = DecayMode::ZetaEpsilon(rat(1, 10));
    let precision = PrecisionChoice::Auto { max_bits: 1024 };
    let rows: Vec<_> = (4..=10).map(|n| decay_row(&zeta, n, 0, &mode, precision).unwrap()).collect();
    let all_hold = rows.iter().all(|r| r.status == RowStatus::Holds && r.bits_used <= 1024);
    let max_bits = rows.iter().map(|r| r.bits_used).max().unwrap_or(0);
    let n2 = decay_row(&zeta, 2, 0, &mode, precision).unwrap();
    let log_h4 = rows[0].log_h.as_ref().map_or(f64::NAN, Ball::to_f64);
    let secs = start.elapsed().as_secs_f64();
    let ok = all_hold && n2.status == RowStatus::Fails && secs < 300.0;
    Outcome::hard(
        ok,
        format!(
            "n = 4..10 certified below -n^2 log 1.9 at <= {max_bits} bits (log H_4 = {log_h4:.5}); \
             n = 2 row {} as expected; {secs:.2}s",
            n2.status.as_str()
        ),
    )
}

fn criterion_5() -> Outcome {
    let zeta = SeriesSpec::zeta();
    let s10 = ratio_limit_statistic(&zeta, 10, 256).unwrap();
    let s40 = ratio_limit_statistic(&zeta, 40, 256).unwrap();
    let m60 = ratio_limit_statistic(&SeriesSpec::zeta_minus_1(), 60, 256).unwrap();
    let ok = within(&s10, 1.0238, 5e-4) && within(&s40, 1.0, 1e-3) && within(&m60, 1.0, 0.1);
    Outcome::hard(
        ok,
        format!(
            "zeta s=10: {:.6} (band 1.0238 +/- 5e-4), s=40: {:.8} (band 1e-3), zeta_minus_1 s=60: {:.4} (band 0.1)",
            s10.to_f64(),
            s40.to_f64(),
            m60.to_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let zeta = SeriesSpec::zeta();
    let env = calibrate_ratio_bounds(&zeta, 2, 30, 256).unwrap();
    let c = env.c.to_f64().unwrap();
    let mut holding = 0;
    for n in 2..=8 {
        for r in 0..=4 {
            if envelope_check(&env, &zeta, n, r, PrecisionChoice::default()).unwrap().holds {
                holding += 1;
            }
        }
    }
    let ok = (1.0..=1.2).contains(&c) && env.k0 == 2 && holding == 35;
    Outcome::hard(ok, format!("c1 = {c} with K1 = {}; {holding}/35 determinants below the envelope bound", env.k0))
}

fn criterion_7() -> Outcome {
    let pow2 = SeriesSpec::pow2();
    let first = integrality_check(&pow2, 2, 0, 0).unwrap();
    let mut positive = 0;
    let mut literal_factor = 0;
    let ledger = rational_values(&pow2, 0, 16).unwrap();
    for n in 1..=6usize {
        for r in 0..=3i64 {
            let row = integrality_check(&pow2, n, r, 0).unwrap();
            if row.value > BigInt::zero() {
                positive += 1;
            }
            let d = ledger.d_at(2 * n).unwrap();
            let scaled = BigRational::from_integer(d.pow(n as u32)) * &row.det;
            if scaled.is_integer() && scaled.is_positive() {
                literal_factor += 1;
            }
        }
    }
    let growth = growth_verifier(&ledger, &rat(19, 10)).unwrap();
    let failing: Vec<usize> = growth.rows.iter().filter(|r| (2..=16).contains(&r.m) && !r.exceeds).map(|r| r.m).collect();
    let from_three = growth.rows.iter().filter(|r| (3..=16).contains(&r.m)).all(|r| r.exceeds);
    let base = first.value == BigInt::from(1280) && positive == 24;
    Outcome {
        pass: base && failing.is_empty(),
        attainable: base && from_three && failing == [2],
        soft: false,
        detail: format!(
            "D_4^2 H_2^(0) = {}; {positive}/24 integrality rows positive with D_(2n+r)^n, {literal_factor}/24 with D_(2n)^n; \
             D_m > 1.9^m fails at m = {failing:?} (D_2 = 3 < 3.61), holds for 3 <= m <= 16",
            first.value
        ),
    }
}

fn criterion_8() -> Outcome {
    let fit = zagier_fit(8..=14, PrecisionChoice::default()).unwrap();
    let a0 = fit.a0_estimates.iter().find(|(n, _)| *n == 12).map(|(_, b)| b.to_f64()).unwrap();
    let a0_ok = (a0 - 0.351466738331).abs() < 1e-3;
    let ratio_ok = fit
        .ratio_estimates
        .iter()
        .all(|(_, b)| (b.to_f64() - fit.ratio_reference.to_f64()).abs() < 1e-2);
    let rows = monien_ratio_check(8..=14, PrecisionChoice::default()).unwrap();
    let worst = |p: MonienPairing| {
        rows.iter().filter(|r| r.pairing == p).map(|r| r.residual.to_f64()).fold(0.0f64, f64::max)
    };
    let printed = worst(MonienPairing::PrintedOdd);
    let swapped = worst(MonienPairing::SwappedOdd).max(worst(MonienPairing::SwappedEven));
    Outcome {
        pass: a0_ok && ratio_ok && printed < 50.0,
        attainable: true,
        soft: true,
        detail: format!(
            "A0(12) = {a0:.6} vs 0.351467: {a0_ok}; A1/A0 within 1e-2 of {:.7}: {ratio_ok}; \
             printed first ratio residual max {printed:.3e}, re-paired residual max {swapped:.3}",
            fit.ratio_reference.to_f64()
        ),
    }
}

fn engine_value(q: &HankelQuery<'_>, choice: EngineChoice) -> Option<DetResult> {
    match compute_det(q, choice, &PrecisionChoice::Fixed(256).policy_for(q.n)) {
        Ok(res) => Some(res),
        Err(HankelError::PrecisionExhausted(last)) => Some(*last),
        Err(_) => None,
    }
}

fn criterion_9() -> Outcome {
    let catalog = [
        SeriesSpec::zeta(),
        SeriesSpec::zeta_minus_1(),
        SeriesSpec::zeta_ap(2, 1).unwrap(),
        SeriesSpec::pow2(),
        SeriesSpec::geo2(),
        SeriesSpec::factorial_seq(),
    ];
    let mut cases = 0;
    let mut disagreements = Vec::new();
    for spec in &catalog {
        for n in 1..=6 {
            for r in spec.min_offset().max(0)..=2 {
                let q = HankelQuery::new(spec, n, r).unwrap();
                let mut balls = Vec::new();
                for choice in [EngineChoice::Lu, EngineChoice::Dodgson, EngineChoice::Exact] {
                    if choice == EngineChoice::Exact && !spec.has_exact_values() {
                        continue;
                    }
                    if let Some(res) = engine_value(&q, choice) {
                        balls.push(res.value);
                    }
                }
                cases += 1;
                let expected = if spec.has_exact_values() { 3 } else { 2 };
                let agree = balls.len() == expected
                    && balls.iter().enumerate().all(|(i, a)| balls[i + 1..].iter().all(|b| a.overlaps(b)));
                if !agree {
                    disagreements.push(format!("{} n={n} r={r}", spec.name()));
                }
            }
        }
    }
    Outcome::hard(
        disagreements.is_empty(),
        format!("{} of {cases} queries with pairwise intersecting enclosures; failures {disagreements:?}", cases - disagreements.len()),
    )
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut broken = Vec::new();
    for (id, run) in criteria {
        let o = run();
        let tag = match (o.pass, o.soft) {
            (true, _) => "PASS",
            (false, true) => "FAIL (soft, reported only)",
            (false, false) => "FAIL",
        };
        println!("criterion {id}: {tag}: {}", o.detail);
        if !o.soft && !o.attainable {
            broken.push(id);
        }
    }
    assert!(broken.is_empty(), "attainable part of criteria {broken:?} failed");
}

#[test]
fn exact_zero_is_reported_as_such() {
    let geo2 = SeriesSpec::geo2();
    let q = HankelQuery::new(&geo2, 3, 0).unwrap();
    assert_eq!(det_exact_rational(&q).unwrap().sign, Sign::ExactlyZero);
}
