use hankel_core::hankel::{det_exact_rational, HankelQuery};
use hankel_core::rationality::{growth_verifier, integrality_check, rational_values, RationalityError};
use hankel_core::sequences::SeriesSpec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow};

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn pow2_ledger() {
    let l = rational_values(&SeriesSpec::pow2(), 0, 4).unwrap();
    assert_eq!(l.q, ints(&[3, 7, 15]));
    assert_eq!(l.d, ints(&[3, 21, 105]));
    let long = rational_values(&SeriesSpec::pow2(), 0, 20).unwrap();
    for (i, q) in long.q.iter().enumerate() {
        let k = i as u32 + 2;
        assert_eq!(*q, (BigInt::one() << k) - 1);
        for d in &long.d[i..] {
            assert!(d.is_multiple_of(q));
        }
    }
    assert!(long.d.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn geo2_ledger() {
    let l = rational_values(&SeriesSpec::geo2(), 0, 3).unwrap();
    assert_eq!(l.q, ints(&[4, 8]));
}

#[test]
fn zeta_is_not_rational() {
    assert!(matches!(
        rational_values(&SeriesSpec::zeta(), 0, 4),
        Err(RationalityError::NotRationalSeries(_))
    ));
}

#[test]
fn integrality() {
    let p = SeriesSpec::pow2();
    let i = integrality_check(&p, 2, 0, 0).unwrap();
    assert_eq!(i.value, BigInt::from(1280));
    assert_eq!(i.det, BigRational::new(256.into(), 2205.into()));
    assert_eq!(integrality_check(&p, 1, 0, 0).unwrap().value, BigInt::from(4));
    assert_eq!(integrality_check(&SeriesSpec::geo2(), 3, 0, 0).unwrap().value, BigInt::from(0));
    for n in 1..=6 {
        for r in 0..=3 {
            let res = integrality_check(&p, n, r, 0).unwrap();
            assert!(res.value > BigInt::from(0));
            let det = det_exact_rational(&HankelQuery::new(&p, n, r).unwrap()).unwrap().exact.unwrap();
            assert_eq!(det, res.det);
            let oracle = det * BigRational::from_integer(Pow::pow(res.d.clone(), n as u32));
            assert_eq!(oracle, BigRational::from_integer(res.value));
        }
    }
}

#[test]
fn pow2_growth() {
    let l = rational_values(&SeriesSpec::pow2(), 0, 16).unwrap();
    let base = BigRational::new(19.into(), 10.into());
    let report = growth_verifier(&l, &base).unwrap();
    assert!(!report.all_exceed());
    assert!(!report.rows[0].exceeds);
    assert!(report.rows[1..].iter().all(|r| r.exceeds));
    assert!(report.max_q_strictly_increasing);
    assert!(!report.rate_nondecreasing);
    let drop = &report.rows[4];
    assert_eq!(drop.m, 6);
    assert!(drop.rate.certified_lt(&report.rows[3].rate));
    for row in &report.rows {
        let floor = 2f64.ln() * (1.0 - 1.0 / row.m as f64);
        assert!(row.rate.to_f64() >= floor);
        assert_eq!(row.max_q_exceeds, Some(true));
    }
}
