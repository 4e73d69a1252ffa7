//! The JSON format for user-supplied series and exact number parsing.

use std::path::Path;

use hankel_core::sequences::{SeriesSpec, TailBound, CATALOG};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// A number written either as a JSON integer or as a string such as
/// `"3"`, `"-7/2"`, `"0.125"` or `"1e-3"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<BigRational, CliError> {
        match self {
            Number::Int(i) => Ok(BigRational::from_integer((*i).into())),
            Number::Text(s) => parse_rational(s),
        }
    }
}

/// A Dirichlet series given by listed coefficients.
///
/// ```json
/// {"name": "two_terms", "coeffs": [[1, "1"], [3, "1/2"]], "s0": "0",
///  "tail_C": "0", "tail_kappa": "0", "support_finite": true}
/// ```
///
/// When `support_finite` is false the listed coefficients cover `n <= horizon`
/// and every later coefficient is bounded by `tail_C * n^tail_kappa`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub name: String,
    pub coeffs: Vec<(u64, Number)>,
    pub s0: Number,
    #[serde(rename = "tail_C")]
    pub tail_c: Number,
    pub tail_kappa: Number,
    pub support_finite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
}

impl SeriesFile {
    pub fn to_spec(&self) -> Result<SeriesSpec, CliError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(n, c)| Ok((*n, c.to_rational()?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        if !self.support_finite && self.horizon.is_none() {
            return Err(CliError::InvalidSeries(format!(
                "{}: series with infinite support need a horizon",
                self.name
            )));
        }
        let tail = TailBound::new(self.tail_c.to_rational()?, self.tail_kappa.to_rational()?);
        SeriesSpec::listed(&self.name, coeffs, self.horizon, self.support_finite, self.s0.to_rational()?, tail)
            .map_err(|e| CliError::InvalidSeries(e.to_string()))
    }
}

/// Parses `p/q`, an integer, or a decimal with an optional exponent, exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let s = text.trim();
    let bad = || CliError::InvalidConfig(format!("cannot parse {text:?} as a rational number"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Renders a rational as `p` or `p/q`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Resolves a catalog name or a path to a series file.
pub fn load_series(name_or_path: &str) -> Result<SeriesSpec, CliError> {
    if let Ok(spec) = SeriesSpec::from_catalog(name_or_path) {
        return Ok(spec);
    }
    let path = Path::new(name_or_path);
    if !path.is_file() {
        return Err(CliError::InvalidSeries(format!(
            "{name_or_path:?} is neither a catalog series ({}) nor a readable file",
            CATALOG.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path)?;
    let file: SeriesFile = serde_json::from_str(&text)
        .map_err(|e| CliError::InvalidSeries(format!("{}: {e}", path.display())))?;
    file.to_spec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-7/2").unwrap(), q(-7, 2));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
        assert_eq!(parse_rational(" 12 ").unwrap(), q(12, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "--1", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn series_file_round_trip() {
        let json = r#"{"name":"t","coeffs":[[1,"1"],[2,3]],"s0":0,"tail_C":"0","tail_kappa":"0","support_finite":true}"#;
        let f: SeriesFile = serde_json::from_str(json).unwrap();
        let spec = f.to_spec().unwrap();
        assert_eq!(spec.exact_value(1), Some(q(5, 2)));
        let back: SeriesFile = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn infinite_files_need_a_horizon() {
        let json = r#"{"name":"t","coeffs":[[1,"1"]],"s0":2,"tail_C":"1","tail_kappa":"0","support_finite":false}"#;
        let f: SeriesFile = serde_json::from_str(json).unwrap();
        assert!(matches!(f.to_spec(), Err(CliError::InvalidSeries(_))));
    }
}
