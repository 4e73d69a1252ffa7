use hankel_core::hankel::{
    build_hankel, certify_positive, check_dodgson_identity, check_dodgson_identity_exact, compute_det, det_dodgson,
    det_exact_rational, det_lu, monien_sum, telescoping_decomposition, Certificate, EngineChoice, HankelQuery,
};
use hankel_core::numerics::{Dyadic, PrecisionPolicy};
use hankel_core::sequences::SeriesSpec;
use hankel_core::Sign;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Leibniz expansion over all permutations.
fn leibniz(m: &[Vec<BigRational>]) -> BigRational {
    fn rec(m: &[Vec<BigRational>], row: usize, used: &mut Vec<bool>, sign: bool, acc: BigRational, out: &mut BigRational) {
        let n = m.len();
        if row == n {
            if sign {
                *out -= acc;
            } else {
                *out += acc;
            }
            return;
        }
        for c in 0..n {
            if used[c] {
                continue;
            }
            let inversions = used[c + 1..].iter().filter(|&&u| u).count();
            used[c] = true;
            rec(m, row + 1, used, sign ^ (inversions % 2 == 1), &acc * &m[row][c], out);
            used[c] = false;
        }
    }
    let mut out = BigRational::zero();
    rec(m, 0, &mut vec![false; m.len()], false, BigRational::one(), &mut out);
    out
}

fn hankel_oracle(spec: &SeriesSpec, n: usize, r: i64) -> BigRational {
    let m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| spec.exact_value(2 + r + (i + j) as i64).unwrap()).collect())
        .collect();
    leibniz(&m)
}

#[test]
fn factorial_determinants_match_permutation_expansion() {
    let f = SeriesSpec::factorial_seq();
    for n in 1..=5 {
        for r in 0..=2 {
            let query = HankelQuery::new(&f, n, r).unwrap();
            let exact = det_exact_rational(&query).unwrap().exact.unwrap();
            assert_eq!(exact, hankel_oracle(&f, n, r), "n={n} r={r}");
            let lu = det_lu(&build_hankel(&query, 128).unwrap().rows());
            assert!(lu.contains_rational(&exact));
        }
    }
    let query = HankelQuery::new(&f, 3, 0).unwrap();
    assert_eq!(det_exact_rational(&query).unwrap().exact, Some(q(4, 1)));
    let d = det_dodgson(&query, 128).unwrap();
    assert!(d.value.contains_rational(&q(4, 1)));
}

#[test]
fn small_matrices() {
    let f = SeriesSpec::factorial_seq();
    let m = build_hankel(&HankelQuery::new(&f, 2, 0).unwrap(), 64).unwrap();
    assert_eq!(m.entry(0, 0).exact_integer(), Some(BigInt::from(1)));
    assert_eq!(m.entry(1, 1).exact_integer(), Some(BigInt::from(2)));
    let g = SeriesSpec::geo2();
    let gq = HankelQuery::new(&g, 2, 0).unwrap();
    let gm = build_hankel(&gq, 64).unwrap();
    assert!(gm.entry(0, 1).contains_rational(&q(9, 8)));
    assert_eq!(det_exact_rational(&gq).unwrap().exact, Some(q(1, 16)));
    let p = SeriesSpec::pow2();
    assert_eq!(det_exact_rational(&HankelQuery::new(&p, 2, 0).unwrap()).unwrap().exact, Some(q(256, 2205)));
}

#[test]
fn zeta_two_by_two_matches_reference() {
    let z = SeriesSpec::zeta();
    let h0 = det_lu(&build_hankel(&HankelQuery::new(&z, 2, 0).unwrap(), 128).unwrap().rows());
    assert!((h0.to_f64() - 0.33540956003915176).abs() < 1e-15);
    let h1 = det_lu(&build_hankel(&HankelQuery::new(&z, 2, 1).unwrap(), 128).unwrap().rows());
    assert!((h1.to_f64() - 0.07502258391693426).abs() < 1e-15);
}

#[test]
fn geo2_vanishing() {
    let g = SeriesSpec::geo2();
    let query = HankelQuery::new(&g, 3, 0).unwrap();
    let exact = det_exact_rational(&query).unwrap();
    assert_eq!(exact.sign, Sign::ExactlyZero);
    let d = det_dodgson(&query, 128).unwrap();
    assert_eq!(d.sign, Sign::ZeroUnresolved);
    assert!(d.value.contains_dyadic(&Dyadic::zero()));
    assert_eq!(certify_positive(&query), Certificate::Vanishes { support_size: 2 });
    let ms = monien_sum(&query, 8).unwrap();
    assert!(ms.exact && ms.value.is_zero());
}

#[test]
fn monien_first_tuple_and_monotone_partial_sums() {
    let z = SeriesSpec::zeta();
    let query = HankelQuery::new(&z, 2, 0).unwrap();
    assert_eq!(monien_sum(&query, 2).unwrap().value, q(1, 16));
    let mut prev = BigRational::zero();
    for t in 2..12 {
        let s = monien_sum(&query, t).unwrap().value;
        assert!(s >= prev);
        prev = s;
    }
    assert!(prev < q(33541, 100000));
}

#[test]
fn dodgson_identity_residuals() {
    for spec in [SeriesSpec::zeta(), SeriesSpec::factorial_seq(), SeriesSpec::geo2()] {
        for n in 2..=4 {
            for r in 0..=2 {
                let res = check_dodgson_identity(&spec, n, r, 256).unwrap();
                assert!(res.contains_zero(), "{} n={n} r={r}", spec.name());
            }
        }
    }
    assert!(check_dodgson_identity_exact(&SeriesSpec::geo2(), 2, 0).unwrap().is_zero());
    let res = check_dodgson_identity(&SeriesSpec::zeta(), 2, 0, 256).unwrap();
    assert!(res.rad().to_f64() < 1e-20);
}

#[test]
fn telescoping() {
    let f = SeriesSpec::factorial_seq();
    let t = telescoping_decomposition(&HankelQuery::new(&f, 3, 0).unwrap(), 128).unwrap();
    assert_eq!(t.correction_factors, 1);
    assert!(t.reconstruction.contains_rational(&q(4, 1)));
    let z = SeriesSpec::zeta();
    let t = telescoping_decomposition(&HankelQuery::new(&z, 4, 0).unwrap(), 256).unwrap();
    assert!(t.agrees);
    assert_eq!(t.correction_factors, 3);
    assert_eq!(t.printed_agrees, Some(false));
}

#[test]
fn decay_driver_at_n10() {
    let z = SeriesSpec::zeta();
    let t = std::time::Instant::now();
    let query = HankelQuery::new(&z, 10, 0).unwrap();
    let res = compute_det(&query, EngineChoice::Lu, &PrecisionPolicy::for_hankel(10, 1024)).unwrap();
    eprintln!("n=10 at {} bits in {:?}: {}", res.bits_used, t.elapsed(), res.value);
    let ln = res.value.ln().unwrap().to_f64();
    assert!((ln + 170.69).abs() < 0.01, "{ln}");
}

#[test]
fn positivity_certificates() {
    for spec in [SeriesSpec::zeta(), SeriesSpec::zeta_ap(2, 1).unwrap(), SeriesSpec::zeta_minus_1(), SeriesSpec::pow2()] {
        for n in 1..=12 {
            for r in 0..=3 {
                let c = certify_positive(&HankelQuery::new(&spec, n, r).unwrap());
                assert!(matches!(c, Certificate::Positive { .. }), "{} {n} {r}", spec.name());
            }
        }
    }
    let f = SeriesSpec::factorial_seq();
    assert!(matches!(certify_positive(&HankelQuery::new(&f, 2, 0).unwrap()), Certificate::Unresolved(_)));
}
