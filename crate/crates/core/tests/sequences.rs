use hankel_core::sequences::{calibrate_ratio_bounds, minimal_indices, ratio_limit_statistic, SeriesSpec};
use hankel_core::Ball;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

fn within(b: &Ball, x: f64, tol: f64) -> bool {
    (b.to_f64() - x).abs() <= tol
}

#[test]
fn zeta_values_match_reference() {
    let z = SeriesSpec::zeta();
    let v = z.eval(2, 128).unwrap();
    assert!(within(&v, 1.6449340668482264, 1e-15));
    assert!(v.rad().to_f64() < 1e-30);
    let z5 = SeriesSpec::zeta_ap(2, 1).unwrap().eval(2, 128).unwrap();
    assert!(within(&z5, 1.036_927_755_143_37, 1e-15));
}

#[test]
fn zeta_at_high_precision_is_fast_enough() {
    let t = std::time::Instant::now();
    let vals = SeriesSpec::zeta().eval_range(2, 30, 2048).unwrap();
    eprintln!("30 values at 2048 bits: {:?}", t.elapsed());
    for v in &vals {
        assert!(v.rel_accuracy_bits().unwrap() > 2000);
    }
}

#[test]
fn pow2_closed_form() {
    let v = SeriesSpec::pow2().eval(2, 64).unwrap();
    assert!(v.contains_rational(&BigRational::new(BigInt::from(4), BigInt::from(3))));
}

#[test]
fn ratio_statistics() {
    let z = SeriesSpec::zeta();
    let s10 = ratio_limit_statistic(&z, 10, 128).unwrap();
    assert!(within(&s10, 1.023_773_380_993_517, 1e-14), "{s10}");
    let s40 = ratio_limit_statistic(&z, 40, 128).unwrap();
    assert!(within(&s40, 1.0000001205840907, 1e-14), "{s40}");
    let m1 = ratio_limit_statistic(&SeriesSpec::zeta_minus_1(), 60, 128).unwrap();
    assert!(within(&m1, 1.000_000_047_810_235, 1e-14), "{m1}");
    let mi = minimal_indices(&SeriesSpec::zeta_minus_1(), 100).unwrap();
    assert_eq!((mi.n, mi.m), (2, 3));
}

#[test]
fn calibration() {
    // Largest 2^k (1 - zeta(k+1)/zeta(k)) on each window, from an mpmath reference.
    let binding_full = 1.076_948_122_394_246_f64;
    let binding_tail = 0.511_886_690_496_758_5_f64;
    let env = calibrate_ratio_bounds(&SeriesSpec::zeta(), 2, 30, 128).unwrap();
    assert_eq!(env.c, BigRational::new(1088.into(), 1000.into()));
    assert!(env.c.to_f64().unwrap() >= 1.01 * binding_full);
    assert_eq!(env.case_tag(), "N_eq_1");
    assert_eq!(env.k0, 2);
    let env2 = calibrate_ratio_bounds(&SeriesSpec::zeta(), 10, 30, 128).unwrap();
    assert_eq!(env2.c, BigRational::new(5171.into(), 10000.into()));
    assert!(env2.c.to_f64().unwrap() >= 1.01 * binding_tail);
    let zm = calibrate_ratio_bounds(&SeriesSpec::zeta_minus_1(), 2, 30, 128).unwrap();
    assert_eq!(zm.case_tag(), "N_gt_1");
    for s in [SeriesSpec::pow2(), SeriesSpec::zeta_ap(2, 1).unwrap()] {
        let e = calibrate_ratio_bounds(&s, s.first_argument().max(2), 30, 128).unwrap();
        assert!(e.c > BigRational::zero());
    }
}
