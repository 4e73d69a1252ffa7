//! The bundled invariant suite, deterministic for a given seed.

use hankel_core::bounds::factorial_bound_check;
use hankel_core::hankel::{
    build_hankel, certify_positive, check_dodgson_identity, check_dodgson_identity_exact, det_dodgson,
    det_exact_rational, det_lu, Certificate, HankelQuery,
};
use hankel_core::sequences::{SeriesSpec, TailBound};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::random::{rational_sequence, seeded, small_rational};

const RANDOM_SEQUENCES: usize = 50;
const BALL_BITS: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn from_cases(suite: &str, cases: Vec<(String, bool)>) -> Self {
        let failures: Vec<String> = cases.iter().filter(|(_, ok)| !ok).map(|(c, _)| c.clone()).collect();
        SuiteResult { suite: suite.into(), passed: cases.len() - failures.len(), failed: failures.len(), failures }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub status: String,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

/// Options for [`run_selftest`]. `tamper_zeta` swaps zeta for a faulty
/// evaluator whose values depend on the evaluation window.
#[derive(Clone, Debug, Default)]
pub struct SelftestOptions {
    pub seed: u64,
    pub tamper_zeta: Option<BigRational>,
}

fn zeta(opts: &SelftestOptions) -> SeriesSpec {
    match &opts.tamper_zeta {
        Some(delta) => SeriesSpec::tampered(SeriesSpec::zeta(), delta.clone()),
        None => SeriesSpec::zeta(),
    }
}

fn dodgson_random(seed: u64) -> SuiteResult {
    let mut rng = seeded(seed);
    let trials: Vec<(usize, i64, Vec<BigRational>)> = (0..RANDOM_SEQUENCES)
        .map(|_| {
            let n = rng.gen_range(2..=6usize);
            let r = rng.gen_range(0..=2i64);
            (n, r, rational_sequence(&mut rng, 2 * n + r as usize + 1))
        })
        .collect();
    let cases = trials
        .into_par_iter()
        .enumerate()
        .map(|(i, (n, r, values))| {
            let spec = SeriesSpec::explicit(&format!("random#{i}"), 2, values);
            let exact = check_dodgson_identity_exact(&spec, n, r).is_ok_and(|v| v.is_zero());
            let ball = check_dodgson_identity(&spec, n, r, BALL_BITS).is_ok_and(|v| v.contains_zero());
            (format!("random#{i} n={n} r={r}"), exact && ball)
        })
        .collect();
    SuiteResult::from_cases("dodgson_random", cases)
}

fn dodgson_catalog(opts: &SelftestOptions) -> SuiteResult {
    let specs = [zeta(opts), SeriesSpec::factorial_seq(), SeriesSpec::geo2()];
    let grid: Vec<(usize, usize, i64)> =
        (0..specs.len()).flat_map(|s| (2..=4).flat_map(move |n| (0..=2).map(move |r| (s, n, r)))).collect();
    let cases = grid
        .into_par_iter()
        .map(|(s, n, r)| {
            let spec = &specs[s];
            let ok = check_dodgson_identity(spec, n, r, BALL_BITS).is_ok_and(|v| v.contains_zero());
            (format!("{} n={n} r={r}", spec.name()), ok)
        })
        .collect();
    SuiteResult::from_cases("dodgson_catalog", cases)
}

fn factorial(k: u64) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn factorial_oracle() -> SuiteResult {
    let mut cases = Vec::new();
    for n in 1..=8usize {
        for r in 0..=4u64 {
            let oracle: BigInt = (0..n as u64).map(|k| factorial(k) * factorial(k + r)).product();
            let ok = factorial_bound_check(n, r).is_ok_and(|c| c.det == oracle && c.positive && (n == 1 || c.holds));
            cases.push((format!("factorial n={n} r={r}"), ok));
        }
    }
    for (n, expected) in [(3usize, 4i64), (4, 144)] {
        let ok = factorial_bound_check(n, 0).is_ok_and(|c| c.det == BigInt::from(expected));
        cases.push((format!("factorial H_{n}^(0) = {expected}"), ok));
    }
    SuiteResult::from_cases("factorial_oracle", cases)
}

fn vanishing(seed: u64) -> SuiteResult {
    let mut cases = Vec::new();
    let geo2 = SeriesSpec::geo2();
    for n in 3..=6 {
        for r in 0..=4 {
            let ok = HankelQuery::new(&geo2, n, r)
                .ok()
                .and_then(|q| det_exact_rational(&q).ok())
                .and_then(|d| d.exact)
                .is_some_and(|v| v.is_zero());
            cases.push((format!("geo2 n={n} r={r}"), ok));
        }
    }
    let mut rng = seeded(seed ^ 0x5eed);
    for i in 0..10 {
        let size = rng.gen_range(1..=3usize);
        let mut points: Vec<u64> = Vec::new();
        while points.len() < size {
            let p = rng.gen_range(1..=12u64);
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let coeffs = points
            .iter()
            .map(|&p| {
                let c = small_rational(&mut rng);
                let c = if c.is_zero() { BigRational::one() } else { num_traits::Signed::abs(&c) };
                (p, c)
            })
            .collect();
        let zero_tail = TailBound::new(BigRational::zero(), BigRational::zero());
        let spec = SeriesSpec::listed(&format!("finite#{i}"), coeffs, None, true, BigRational::zero(), zero_tail);
        for r in 0..=4 {
            let ok = spec.as_ref().is_ok_and(|spec| {
                HankelQuery::new(spec, size + 1, r)
                    .ok()
                    .and_then(|q| det_exact_rational(&q).ok())
                    .and_then(|d| d.exact)
                    .is_some_and(|v| v.is_zero())
            });
            cases.push((format!("finite#{i} support={size} r={r}"), ok));
        }
    }
    SuiteResult::from_cases("vanishing", cases)
}

fn catalog(opts: &SelftestOptions) -> Vec<SeriesSpec> {
    vec![
        zeta(opts),
        SeriesSpec::zeta_ap(2, 1).expect("catalog entry"),
        SeriesSpec::zeta_minus_1(),
        SeriesSpec::pow2(),
        SeriesSpec::geo2(),
        SeriesSpec::factorial_seq(),
    ]
}

fn engine_agreement(opts: &SelftestOptions) -> SuiteResult {
    let specs = catalog(opts);
    let grid: Vec<(usize, usize, i64)> =
        (0..specs.len()).flat_map(|s| (1..=6).flat_map(move |n| (0..=2).map(move |r| (s, n, r)))).collect();
    let cases = grid
        .into_par_iter()
        .map(|(s, n, r)| {
            let spec = &specs[s];
            let label = format!("{} n={n} r={r}", spec.name());
            let Ok(q) = HankelQuery::new(spec, n, r) else { return (label, false) };
            let Ok(m) = build_hankel(&q, BALL_BITS) else { return (label, false) };
            let lu = det_lu(&m.rows());
            let dodgson = det_dodgson(&q, BALL_BITS).ok().map(|d| d.value);
            let mut ok = dodgson.as_ref().is_none_or(|d| d.overlaps(&lu));
            if spec.has_exact_values() {
                ok &= det_exact_rational(&q).ok().and_then(|d| d.exact).is_some_and(|e| {
                    lu.contains_rational(&e) && dodgson.as_ref().is_none_or(|d| d.contains_rational(&e))
                });
            } else {
                ok &= dodgson.is_some();
            }
            (label, ok)
        })
        .collect();
    SuiteResult::from_cases("engine_agreement", cases)
}

fn positivity(opts: &SelftestOptions) -> SuiteResult {
    let specs = [zeta(opts), SeriesSpec::zeta_ap(2, 1).expect("catalog entry"), SeriesSpec::zeta_minus_1(), SeriesSpec::pow2()];
    let mut cases = Vec::new();
    for spec in &specs {
        for n in 1..=12 {
            for r in 0..=3 {
                let ok = HankelQuery::new(spec, n, r)
                    .is_ok_and(|q| matches!(certify_positive(&q), Certificate::Positive { .. }));
                cases.push((format!("{} n={n} r={r}", spec.name()), ok));
            }
        }
    }
    SuiteResult::from_cases("positivity", cases)
}

pub fn run_selftest(opts: &SelftestOptions) -> SelftestReport {
    let suites = vec![
        dodgson_random(opts.seed),
        dodgson_catalog(opts),
        factorial_oracle(),
        vanishing(opts.seed),
        engine_agreement(opts),
        positivity(opts),
    ];
    let mut report = SelftestReport { seed: opts.seed, status: String::new(), suites };
    report.status = if report.ok() { "ok" } else { "fail" }.into();
    report
}
