//! Command drivers shared by the binary and the tests.

use std::ops::RangeInclusive;
use std::str::FromStr;

use hankel_core::bounds::{
    check_decay_preconditions, decay_row, envelope_check, monien_ratio_check, zagier_fit, DecayMode, DecayReport,
    RowStatus, ZAGIER_A0_REFERENCE,
};
use hankel_core::hankel::{compute_det, EngineChoice, HankelError, HankelQuery};
use hankel_core::numerics::{PrecisionChoice, DEFAULT_MAX_BITS};
use hankel_core::rationality::{growth_verifier, integrality_check, rational_values, RationalityError};
use hankel_core::sequences::{calibrate_ratio_bounds, ratio_limit_statistic, RatioEnvelope, SeriesKind, SeriesSpec};
use hankel_core::Ball;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::records::{ball_string, CheckStatus, DetRecord, Report, ReportRow};
use crate::series_file::rational_string;
use crate::CliError;

/// Environment variable overriding the precision ceiling.
pub const MAX_BITS_ENV: &str = "HANKEL_MAX_BITS";

const MIN_BITS: u32 = 64;
const REPORT_BITS: u32 = 128;

pub fn max_bits_from_env() -> Result<u32, CliError> {
    match std::env::var(MAX_BITS_ENV) {
        Err(_) => Ok(DEFAULT_MAX_BITS),
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|b| *b >= MIN_BITS)
            .ok_or_else(|| CliError::InvalidConfig(format!("{MAX_BITS_ENV}={v:?} is not an integer >= {MIN_BITS}"))),
    }
}

/// `auto` or a fixed bit count in `[64, max_bits]`.
pub fn parse_precision(text: &str, max_bits: u32) -> Result<PrecisionChoice, CliError> {
    if text.trim().eq_ignore_ascii_case("auto") {
        return Ok(PrecisionChoice::Auto { max_bits });
    }
    let bits: u32 =
        text.trim().parse().map_err(|_| CliError::InvalidConfig(format!("precision {text:?} is not auto or bits")))?;
    if !(MIN_BITS..=max_bits).contains(&bits) {
        return Err(CliError::InvalidConfig(format!("precision {bits} is outside [{MIN_BITS}, {max_bits}]")));
    }
    Ok(PrecisionChoice::Fixed(bits))
}

pub fn parse_engine(text: &str) -> Result<EngineChoice, CliError> {
    match text.trim() {
        "auto" => Ok(EngineChoice::Auto),
        "lu" => Ok(EngineChoice::Lu),
        "dodgson" => Ok(EngineChoice::Dodgson),
        "monien" => Ok(EngineChoice::Monien),
        "exact" => Ok(EngineChoice::Exact),
        other => Err(CliError::InvalidConfig(format!("unknown engine {other:?}"))),
    }
}

/// `a`, `a..b` or `a..=b`; both forms with dots include `b`.
pub fn parse_range<T>(text: &str) -> Result<RangeInclusive<T>, CliError>
where
    T: FromStr + PartialOrd + Copy,
{
    let bad = || CliError::InvalidConfig(format!("cannot parse range {text:?}"));
    let t = text.trim();
    let (a, b) = match t.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (t, t),
    };
    let a: T = a.trim().parse().map_err(|_| bad())?;
    let b: T = b.trim().parse().map_err(|_| bad())?;
    if b < a {
        return Err(bad());
    }
    Ok(a..=b)
}

/// Settings shared by the commands that sweep an `(n, r)` grid.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub series: SeriesSpec,
    pub n: RangeInclusive<usize>,
    pub r: RangeInclusive<i64>,
    pub precision: PrecisionChoice,
    pub engine: EngineChoice,
}

impl RunConfig {
    fn grid(&self) -> Result<Vec<(usize, i64)>, CliError> {
        if *self.n.start() == 0 {
            return Err(CliError::InvalidConfig("n starts at 1".into()));
        }
        let min = self.series.min_offset();
        if *self.r.start() < min {
            return Err(CliError::InvalidConfig(format!(
                "{} needs r >= {min}, got {}",
                self.series.name(),
                self.r.start()
            )));
        }
        Ok(self.n.clone().flat_map(|n| self.r.clone().map(move |r| (n, r))).collect())
    }
}

/// Records in `(n, r)` order; `exhausted` is set when some entry missed its
/// accuracy target, in which case its record holds the last attempt.
#[derive(Clone, Debug)]
pub struct ComputeOutput {
    pub records: Vec<DetRecord>,
    pub exhausted: bool,
}

pub fn compute(cfg: &RunConfig) -> Result<ComputeOutput, CliError> {
    let spec = &cfg.series;
    let results: Vec<Result<(DetRecord, bool), CliError>> = cfg
        .grid()?
        .par_iter()
        .map(|&(n, r)| {
            let q = HankelQuery::new(spec, n, r).map_err(|e| CliError::from_hankel(spec.name(), e))?;
            match compute_det(&q, cfg.engine, &cfg.precision.policy_for(n)) {
                Ok(res) => Ok((DetRecord::new(spec.name(), &res), false)),
                Err(HankelError::PrecisionExhausted(last)) => Ok((DetRecord::new(spec.name(), &last), true)),
                Err(e) => Err(CliError::from_hankel(spec.name(), e)),
            }
        })
        .collect();
    let mut out = ComputeOutput { records: Vec::with_capacity(results.len()), exhausted: false };
    for res in results {
        let (record, exhausted) = res?;
        out.exhausted |= exhausted;
        out.records.push(record);
    }
    Ok(out)
}

fn within(value: &Ball, target: &Ball, tol: &BigRational) -> CheckStatus {
    let dist = (value - target).abs();
    let tol = Ball::from_rational(tol, dist.prec());
    if dist.certified_lt(&tol) {
        CheckStatus::Holds
    } else if dist.certified_gt(&tol) {
        CheckStatus::Fails
    } else {
        CheckStatus::Unresolved
    }
}

fn status_of(row: RowStatus) -> CheckStatus {
    match row {
        RowStatus::Holds => CheckStatus::Holds,
        RowStatus::Fails => CheckStatus::Fails,
        RowStatus::Unresolved => CheckStatus::Unresolved,
    }
}

pub fn verify_decay(cfg: &RunConfig, mode: &DecayMode) -> Result<Report, CliError> {
    let spec = &cfg.series;
    let name = spec.name();
    cfg.grid()?;
    let mut report = Report::new("verify decay", name);
    match mode {
        DecayMode::ZetaEpsilon(e) => report.note("mode", format!("zeta_epsilon({})", rational_string(e))),
        DecayMode::GeneralC(c) => report.note("mode", format!("general_c({})", rational_string(c))),
    }
    for r in cfg.r.clone() {
        check_decay_preconditions(spec, cfg.n.clone(), r).map_err(|e| CliError::from_bounds(name, e))?;
        let rows = cfg
            .n
            .clone()
            .into_par_iter()
            .map(|n| decay_row(spec, n, r, mode, cfg.precision))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::from_bounds(name, e))?;
        let decay = DecayReport::assemble(spec, r, mode, rows).map_err(|e| CliError::from_bounds(name, e))?;
        report.note("c_used", ball_string(&decay.c_used));
        if let Some(a) = &decay.asymptotic_constant {
            report.note("asymptotic_constant", ball_string(a));
        }
        for row in &decay.rows {
            let lhs = row.log_h.as_ref().map_or_else(|| "unresolved".to_string(), ball_string);
            report.push(ReportRow::new(
                format!("log H_{}^({}) < -c n^2", row.n, r),
                lhs,
                ball_string(&row.rhs),
                status_of(row.status),
            ));
        }
    }
    Ok(report)
}

/// The envelope used for a series: the fixed factorial one, or a calibration
/// over `window`.
pub fn envelope_for(spec: &SeriesSpec, window: Option<(i64, i64)>) -> Result<RatioEnvelope, CliError> {
    if spec.name() == "factorial_seq" {
        return Ok(RatioEnvelope::factorial());
    }
    if spec.kind() != SeriesKind::Dirichlet {
        return Err(CliError::InvalidSeries(format!("no ratio envelope is available for {}", spec.name())));
    }
    let (k_min, k_max) = window.unwrap_or((spec.first_argument().max(2), 30));
    calibrate_ratio_bounds(spec, k_min, k_max, REPORT_BITS).map_err(CliError::from_series)
}

pub fn verify_envelope(cfg: &RunConfig, window: Option<(i64, i64)>) -> Result<Report, CliError> {
    let spec = &cfg.series;
    let name = spec.name();
    let env = envelope_for(spec, window)?;
    let mut report = Report::new("verify envelope", name);
    report.note("case", env.case_tag());
    report.note("c", rational_string(&env.c));
    report.note("K", env.k0.to_string());
    if let Some((a, b)) = env.verified {
        report.note("calibration_window", format!("{a}..{b}"));
        report.note("calibration", "empirical");
    }
    let grid: Vec<(usize, i64)> = cfg.grid()?.into_iter().filter(|&(n, _)| n >= 2).collect();
    let rows = grid
        .par_iter()
        .map(|&(n, r)| envelope_check(&env, spec, n, r, cfg.precision))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::from_bounds(name, e))?;
    for row in rows {
        report.push(ReportRow::from_bool(
            format!("H_{}^({}) < h({}) prod lambda(2k+{})", row.n, row.r, 2 + row.r, row.r),
            ball_string(&row.det),
            ball_string(&row.bound),
            row.holds,
        ));
    }
    Ok(report)
}

pub fn verify_rationality(cfg: &RunConfig, offset: i64, m_max: usize, base: &BigRational) -> Result<Report, CliError> {
    let spec = &cfg.series;
    let name = spec.name();
    let ledger = rational_values(spec, offset, m_max).map_err(|e| CliError::from_rationality(name, e))?;
    let mut report = Report::new("verify rationality", name);
    let join = |xs: &[num_bigint::BigInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    report.note("R", offset.to_string());
    report.note("q", join(&ledger.q));
    report.note("D", join(&ledger.d));

    let divides = ledger.q.iter().enumerate().all(|(i, q)| ledger.d[i..].iter().all(|d| (d % q).eq(&0.into())));
    report.push(ReportRow::from_bool("q_k divides D_m for k <= m", "ledger", "lcm", divides));

    let grid: Vec<(usize, i64)> = cfg.grid()?.into_iter().filter(|&(_, r)| r >= offset).collect();
    let checks: Vec<_> = grid
        .par_iter()
        .map(|&(n, r)| (n, r, integrality_check(spec, n, r, offset)))
        .collect();
    for (n, r, res) in checks {
        let check = format!("D_{}^{} H_{}^({}) is a nonnegative integer", 2 * n as i64 + r - offset, n, n, r);
        match res {
            Ok(i) => report.push(ReportRow::from_bool(check, i.value.to_string(), "integer >= 0", true)),
            Err(RationalityError::NotAnInteger(q)) => {
                report.push(ReportRow::from_bool(check, rational_string(&q), "integer >= 0", false))
            }
            Err(e) => return Err(CliError::from_rationality(name, e)),
        }
    }

    let growth = growth_verifier(&ledger, base).map_err(|e| CliError::from_rationality(name, e))?;
    let base_s = rational_string(base);
    for row in &growth.rows {
        let power = num_traits::pow(base.clone(), row.m);
        report.push(ReportRow::from_bool(
            format!("D_{} > ({base_s})^{}", row.m, row.m),
            row.d.to_string(),
            ball_string(&Ball::from_rational(&power, 64)),
            row.exceeds,
        ));
        let status = match row.max_q_exceeds {
            Some(true) => CheckStatus::Holds,
            Some(false) => CheckStatus::Fails,
            None => CheckStatus::Unresolved,
        };
        report.push(
            ReportRow::new(format!("max q_k (k <= {}) > m log({base_s})", row.m), row.max_q.to_string(), "", status)
                .heuristic(),
        );
        report.note(&format!("rate_{}", row.m), ball_string(&row.rate));
    }
    report.push(
        ReportRow::from_bool("log D_m / m nondecreasing", "rates", "", growth.rate_nondecreasing).heuristic(),
    );
    report.push(
        ReportRow::from_bool("max q_k strictly increasing", "q", "", growth.max_q_strictly_increasing).heuristic(),
    );
    Ok(report)
}

pub fn verify_ratio_limit(spec: &SeriesSpec, s: RangeInclusive<i64>, tol: &BigRational) -> Result<Report, CliError> {
    let mut report = Report::new("verify ratio-limit", spec.name());
    report.note("tolerance", rational_string(tol));
    let values = s
        .clone()
        .into_par_iter()
        .map(|s| ratio_limit_statistic(spec, s, REPORT_BITS).map(|v| (s, v)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::from_series)?;
    for (s, v) in values {
        let status = within(&v, &Ball::one(v.prec()), tol);
        report.push(ReportRow::new(format!("|statistic({s}) - 1| < tol"), ball_string(&v), "1", status));
    }
    Ok(report)
}

/// Heuristic reproductions for zeta; never affects the exit code.
pub fn verify_asymptotics(n: RangeInclusive<usize>, precision: PrecisionChoice) -> Result<Report, CliError> {
    let mut report = Report::new("verify asymptotics", "zeta");
    let fit = zagier_fit(n.clone(), precision).map_err(|e| CliError::from_bounds("zeta", e))?;
    report.note("A0_reference", ZAGIER_A0_REFERENCE);
    report.note("A1_over_A0_reference", ball_string(&fit.ratio_reference.clone().with_prec(64)));
    let a0_tol = BigRational::new(1.into(), 1000.into());
    let ratio_tol = BigRational::new(1.into(), 100.into());
    for (n, a0) in &fit.a0_estimates {
        let status = within(a0, &fit.a0_reference, &a0_tol);
        report.push(
            ReportRow::new(format!("|A0({n}) - A0_ref| < 1e-3"), ball_string(a0), ZAGIER_A0_REFERENCE, status)
                .heuristic(),
        );
    }
    for (n, ratio) in &fit.ratio_estimates {
        let status = within(ratio, &fit.ratio_reference, &ratio_tol);
        report.push(
            ReportRow::new(
                format!("|A1({n})/A0({n}) - e^(9/8)/sqrt(6)| < 1e-2"),
                ball_string(ratio),
                ball_string(&fit.ratio_reference.clone().with_prec(64)),
                status,
            )
            .heuristic(),
        );
    }
    let rows = monien_ratio_check(n, precision).map_err(|e| CliError::from_bounds("zeta", e))?;
    let fifty = Ball::from_i64(50, REPORT_BITS);
    for row in rows {
        let status = if row.residual.certified_lt(&fifty) {
            CheckStatus::Holds
        } else if row.residual.certified_gt(&fifty) {
            CheckStatus::Fails
        } else {
            CheckStatus::Unresolved
        };
        report.push(
            ReportRow::new(
                format!("{} n={}: normalized residual {} < 50", row.pairing.as_str(), row.n, ball_string(&row.residual)),
                ball_string(&row.measured),
                ball_string(&row.predicted),
                status,
            )
            .heuristic(),
        );
    }
    Ok(report)
}
