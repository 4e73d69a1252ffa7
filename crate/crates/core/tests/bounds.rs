use hankel_core::bounds::{
    decay_row, envelope_bound, envelope_check, factorial_bound_check, monien_ratio_check, verify_quadratic_decay,
    zagier_fit, BoundsError, DecayMode, MonienPairing, RowStatus,
};
use hankel_core::numerics::PrecisionChoice;
use hankel_core::sequences::{calibrate_ratio_bounds, RatioEnvelope, SeriesSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

fn fact(k: u64) -> BigInt {
    (2..=k).fold(BigInt::one(), |a, i| a * i)
}

fn eps(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

const ZETA2: f64 = 1.6449340668482264;

#[test]
fn factorial_bound_matches_closed_forms() {
    for n in 1..=8usize {
        for r in 0..=4u64 {
            let c = factorial_bound_check(n, r).unwrap();
            let oracle: BigInt = (0..n as u64).map(|k| fact(k) * fact(k + r)).product();
            assert_eq!(c.det, oracle, "n={n} r={r}");
            let bound: BigInt = (1..=n as u64).map(|k| fact(2 * k + r - 2)).product::<BigInt>() << (n - 1);
            assert_eq!(c.bound, bound);
            assert!(c.positive);
            if n == 1 {
                assert_eq!(c.det, c.bound);
                assert!(!c.holds);
            } else {
                assert!(c.holds, "n={n} r={r}");
            }
        }
    }
    let c = factorial_bound_check(4, 0).unwrap();
    assert_eq!(c.det, BigInt::from(144));
    assert_eq!(c.bound, BigInt::from(276_480));
}

#[test]
fn factorial_envelope_bound() {
    let env = RatioEnvelope::factorial();
    let f = SeriesSpec::factorial_seq();
    let b = envelope_bound(&env, &f, 3, 0, 64).unwrap();
    assert_eq!(b.exact_integer(), Some(BigInt::from(192)));
    let row = envelope_check(&env, &f, 4, 1, PrecisionChoice::default()).unwrap();
    assert!(row.holds);
}

#[test]
fn zeta_envelope_bound_and_domain() {
    let z = SeriesSpec::zeta();
    let env = calibrate_ratio_bounds(&z, 2, 30, 128).unwrap();
    let c = env.c.to_f64().unwrap();
    let b = envelope_bound(&env, &z, 2, 0, 128).unwrap();
    let oracle = ZETA2 * 2.0 * ZETA2 * c / 4.0;
    assert!((b.to_f64() - oracle).abs() < 1e-12 * oracle);
    assert!(b.to_f64() > 0.33541);
    assert!(matches!(
        envelope_bound(&env, &z, 2, -1, 128),
        Err(BoundsError::EnvelopeDomainViolated { .. })
    ));
    for n in 2..=5 {
        for r in 0..=2 {
            assert!(envelope_check(&env, &z, n, r, PrecisionChoice::default()).unwrap().holds);
        }
    }
}

#[test]
fn decay_rows() {
    let z = SeriesSpec::zeta();
    let mode = DecayMode::ZetaEpsilon(eps(1, 10));
    let precision = PrecisionChoice::default();
    let row = decay_row(&z, 2, 0, &mode, precision).unwrap();
    assert_eq!(row.status, RowStatus::Fails);
    assert!((row.rhs.to_f64() + 4.0 * 1.9f64.ln()).abs() < 1e-12);
    let report = verify_quadratic_decay(&z, 4..=7, 0, &mode, precision).unwrap();
    assert!(report.all_hold());
    let log4 = report.rows[0].log_h.as_ref().unwrap().to_f64();
    assert!((log4 + 14.52836).abs() < 1e-4, "{log4}");
    assert!((report.asymptotic_constant.unwrap().to_f64() + 2f64.ln()).abs() < 1e-12);

    let zm = SeriesSpec::zeta_minus_1();
    let report = verify_quadratic_decay(&zm, 3..=4, 0, &DecayMode::GeneralC(eps(1, 2)), precision).unwrap();
    let oracle = -2.0 * (3f64.ln() - 2f64.ln());
    assert!((report.asymptotic_constant.unwrap().to_f64() - oracle).abs() < 1e-12);
    assert!(matches!(
        verify_quadratic_decay(&SeriesSpec::geo2(), 2..=3, 0, &mode, precision),
        Err(BoundsError::Degenerate(_))
    ));
}

#[test]
fn monien_rows_at_ten() {
    let rows = monien_ratio_check(10..=10, PrecisionChoice::default()).unwrap();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert!(row.measured.is_negative());
    }
    let get = |p: MonienPairing| rows.iter().find(|r| r.pairing == p).unwrap();
    let odd = get(MonienPairing::SwappedOdd);
    assert!((odd.predicted.to_f64() - (-1.0 / 21.0 + 2.0 / 441.0 - 7.0 / 3.0 / 9261.0)).abs() < 1e-15);
    assert!((odd.measured.to_f64() + 0.0433204297).abs() < 1e-9);
    assert!(odd.residual.to_f64() < 50.0);
    let even = get(MonienPairing::SwappedEven);
    assert!((even.measured.to_f64() + 0.0524238178).abs() < 1e-9);
    assert!(get(MonienPairing::PrintedOdd).measured.to_f64() < -1e30);
}

#[test]
fn zagier_ratio_matches_closed_form() {
    let fit = zagier_fit(8..=10, PrecisionChoice::default()).unwrap();
    let oracle = (9.0f64 / 8.0).exp() / 6f64.sqrt();
    assert!((fit.ratio_reference.to_f64() - oracle).abs() < 1e-14);
    let (_, last) = fit.ratio_estimates.last().unwrap();
    assert!((last.to_f64() - oracle).abs() < 1e-5);
    assert!((fit.a0_reference.to_f64() - 0.351466738331).abs() < 1e-12);
    for (_, a0) in &fit.a0_estimates {
        assert!(a0.to_f64().is_finite() && a0.is_positive());
    }
}
