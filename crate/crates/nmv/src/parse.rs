//! Input parsing: monomial strings, exact rationals, and problem files.
//!
//! Monomials are written against a declared variable list: `x^2*z`,
//! `x0^2*x2` (indexed form), `1` for the unit monomial. Exponent 1 may be
//! omitted. A problem file is a JSON object holding the variable list plus
//! exactly one of `ideals` (generator strings) or `cameras` (matrices of
//! integers or `"a/b"` strings), with optional method and grid overrides.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;

use crate::engine::MapSpec;
use crate::error::{Error, Result};
use crate::linear::CameraConfig;
use crate::monomial::{Monomial, MonomialIdeal};

/// Parse an exact rational from `"a/b"`, or a plain integer string.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer '{t}' in rational '{s}'")))
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in rational '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

/// Resolve a variable token against the declared list; `x<k>` falls back to
/// the index k when the literal name is not declared.
fn resolve_variable(token: &str, vars: &[String]) -> Result<usize> {
    if let Some(i) = vars.iter().position(|v| v == token) {
        return Ok(i);
    }
    if let Some(rest) = token.strip_prefix('x') {
        if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
            let idx: usize = rest
                .parse()
                .map_err(|_| Error::Parse(format!("variable index '{token}' out of range")))?;
            if idx < vars.len() {
                return Ok(idx);
            }
            return Err(Error::Parse(format!(
                "variable index {idx} out of range for {} variables",
                vars.len()
            )));
        }
    }
    Err(Error::Parse(format!("unknown variable '{token}'")))
}

/// Parse a monomial like `x^2*z` or `x0^2*x2` against a variable list.
pub fn parse_monomial(s: &str, vars: &[String]) -> Result<Monomial> {
    let mut exps = vec![0u32; vars.len()];
    let body = s.trim();
    if body.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    for factor in body.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in monomial '{s}'")));
        }
        if factor == "1" {
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => {
                let e = e.trim();
                let exp: u32 = e.parse().map_err(|_| {
                    Error::Parse(format!("invalid exponent '{e}' in monomial '{s}'"))
                })?;
                (name.trim(), exp)
            }
            None => (factor, 1),
        };
        let idx = resolve_variable(name, vars)?;
        exps[idx] = exps[idx]
            .checked_add(exp)
            .ok_or_else(|| Error::Parse(format!("exponent overflow in monomial '{s}'")))?;
    }
    let exps16 = exps
        .into_iter()
        .map(|e| u16::try_from(e).map_err(|_| Error::Parse(format!("exponent too large in '{s}'"))))
        .collect::<Result<Vec<u16>>>()?;
    Ok(Monomial::new(exps16))
}

/// Parse one ideal from generator strings.
pub fn parse_ideal(gens: &[String], vars: &[String]) -> Result<MonomialIdeal> {
    let parsed = gens
        .iter()
        .map(|g| parse_monomial(g, vars))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(vars.len(), parsed)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalEntry {
    Int(i64),
    Text(String),
}

impl RationalEntry {
    fn to_rational(&self) -> Result<BigRational> {
        match self {
            RationalEntry::Int(v) => Ok(BigRational::from_integer((*v).into())),
            RationalEntry::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    #[serde(default)]
    variables: Option<Vec<String>>,
    #[serde(default)]
    r: Option<usize>,
    #[serde(default)]
    ideals: Option<Vec<Vec<String>>>,
    #[serde(default)]
    cameras: Option<Vec<Vec<Vec<RationalEntry>>>>,
    #[serde(default)]
    method: Option<String>,
    #[serde(default)]
    grid: Option<RawGrid>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    #[serde(default)]
    offset: Option<u64>,
    #[serde(default)]
    width: Option<u64>,
}

/// A parsed problem: either a monomial map or a camera configuration.
pub enum ProblemKind {
    Monomial { spec: MapSpec, variables: Vec<String> },
    Linear { config: CameraConfig },
}

pub struct Problem {
    pub kind: ProblemKind,
    pub method: Option<String>,
    pub grid_offset: Option<u64>,
    pub grid_width: Option<u64>,
}

/// Parse and validate a problem file.
pub fn parse_problem(json: &str) -> Result<Problem> {
    let raw: RawProblem =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("invalid problem file: {e}")))?;
    let kind = match (&raw.ideals, &raw.cameras) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "a problem file holds exactly one of 'ideals' or 'cameras', not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Parse(
                "a problem file needs either 'ideals' or 'cameras'".into(),
            ))
        }
        (Some(ideals), None) => {
            let Some(variables) = raw.variables.clone() else {
                return Err(Error::Parse("'ideals' requires a 'variables' list".into()));
            };
            if variables.is_empty() {
                return Err(Error::Parse("'variables' must be nonempty".into()));
            }
            let parsed = ideals
                .iter()
                .map(|gens| parse_ideal(gens, &variables))
                .collect::<Result<Vec<_>>>()?;
            let spec = MapSpec::new(parsed)?;
            ProblemKind::Monomial { spec, variables }
        }
        (None, Some(cameras)) => {
            let r = match (raw.r, &raw.variables) {
                (Some(r), _) => r,
                (None, Some(vars)) if !vars.is_empty() => vars.len() - 1,
                _ => {
                    return Err(Error::Parse(
                        "'cameras' requires either 'r' or a 'variables' list".into(),
                    ))
                }
            };
            let cams = cameras
                .iter()
                .map(|cam| {
                    cam.iter()
                        .map(|row| row.iter().map(|e| e.to_rational()).collect())
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            ProblemKind::Linear { config: CameraConfig::new(r, cams)? }
        }
    };
    if let Some(grid) = &raw.grid {
        if grid.width == Some(0) {
            return Err(Error::Parse("grid width must be positive".into()));
        }
    }
    Ok(Problem {
        kind,
        method: raw.method,
        grid_offset: raw.grid.as_ref().and_then(|g| g.offset),
        grid_width: raw.grid.as_ref().and_then(|g| g.width),
    })
}
