//! Text forms accepted on the command line.
//!
//! * multiplicities: `7,6^2,5^7` (exponent = repetition count);
//! * oracle mode: `exact`, `modular` or `modular:K`;
//! * evaluator list: `formula,recursive`, `all`, ...;
//! * sweep grid: `n=2..3,s=n+3..n+6,d=0..6,m=1..4`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::evaluate::Evaluator;
use crate::oracle::OracleMode;

/// Longest multiplicity list accepted after expansion.
pub const MAX_POINTS: usize = 100_000;
/// Most modular trials accepted in `modular:K`.
pub const MAX_TRIALS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected an integer, found {0:?}")]
    Integer(String),
    #[error("bad repetition in {0:?}")]
    Repetition(String),
    #[error("multiplicity list expands to more than {MAX_POINTS} points")]
    TooManyPoints,
    #[error("unknown oracle mode {0:?} (expected exact or modular[:K])")]
    OracleMode(String),
    #[error("unknown evaluator {0:?}")]
    Evaluator(String),
    #[error("empty evaluator list")]
    NoEvaluators,
    #[error("bad grid: {0}")]
    Grid(String),
}

fn int<T: FromStr>(token: &str) -> Result<T, ParseError> {
    token
        .trim()
        .parse()
        .map_err(|_| ParseError::Integer(token.trim().to_string()))
}

/// Parses `7,6^2,5^7` into `[7, 6, 6, 5, 5, 5, 5, 5, 5, 5]`. Blank input is
/// the empty list; negative multiplicities are accepted.
pub fn parse_mults(text: &str) -> Result<Vec<i64>, ParseError> {
    let mut out = Vec::new();
    if text.trim().is_empty() {
        return Ok(out);
    }
    for item in text.split(',') {
        let (value, times) = match item.split_once('^') {
            Some((value, times)) => {
                let times: usize = times
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::Repetition(item.trim().to_string()))?;
                (int::<i64>(value)?, times)
            }
            None => (int::<i64>(item)?, 1),
        };
        if times > MAX_POINTS - out.len() {
            return Err(ParseError::TooManyPoints);
        }
        out.extend(std::iter::repeat_n(value, times));
    }
    Ok(out)
}

/// Writes a multiplicity list back in `^` shorthand.
pub fn format_mults(mults: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < mults.len() {
        let run = mults[i..].iter().take_while(|&&m| m == mults[i]).count();
        if run == 1 {
            parts.push(mults[i].to_string());
        } else {
            parts.push(format!("{}^{run}", mults[i]));
        }
        i += run;
    }
    parts.join(",")
}

pub fn parse_oracle_mode(text: &str) -> Result<OracleMode, ParseError> {
    let text = text.trim();
    let bad = || ParseError::OracleMode(text.to_string());
    match text.split_once(':') {
        None if text == "exact" => Ok(OracleMode::Exact),
        None if text == "modular" => Ok(OracleMode::Modular { trials: 3 }),
        Some(("modular", k)) => {
            let trials: usize = k.parse().map_err(|_| bad())?;
            if trials == 0 || trials > MAX_TRIALS {
                return Err(bad());
            }
            Ok(OracleMode::Modular { trials })
        }
        _ => Err(bad()),
    }
}

/// Parses a comma list of evaluator names. `all` expands to formula,
/// recursive and oracle. Duplicates are dropped, order is kept.
pub fn parse_evaluators(text: &str) -> Result<Vec<Evaluator>, ParseError> {
    let mut out = Vec::new();
    for name in text.split(',').map(str::trim) {
        let found: &[Evaluator] = match name {
            "all" => &[Evaluator::Formula, Evaluator::Recursive, Evaluator::Oracle],
            "" => continue,
            other => match Evaluator::from_name(other) {
                Some(e) => {
                    if !out.contains(&e) {
                        out.push(e);
                    }
                    continue;
                }
                None => return Err(ParseError::Evaluator(other.to_string())),
            },
        };
        for &e in found {
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    if out.is_empty() {
        return Err(ParseError::NoEvaluators);
    }
    Ok(out)
}

/// A bound on the number of points, absolute or relative to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointBound {
    Fixed(i64),
    AboveN(i64),
}

impl PointBound {
    pub fn at(self, n: u32) -> i64 {
        match self {
            PointBound::Fixed(s) => s,
            PointBound::AboveN(k) => i64::from(n) + k,
        }
    }
}

impl fmt::Display for PointBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PointBound::Fixed(s) => write!(f, "{s}"),
            PointBound::AboveN(k) if k < 0 => write!(f, "n{k}"),
            PointBound::AboveN(k) => write!(f, "n+{k}"),
        }
    }
}

/// Inclusive ranges for a sweep. Multiplicity vectors are enumerated as
/// non-increasing sequences with entries in `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub n: (u32, u32),
    pub s: (PointBound, PointBound),
    pub d: (i64, i64),
    pub m: (i64, i64),
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={}..{},s={}..{},d={}..{},m={}..{}",
            self.n.0, self.n.1, self.s.0, self.s.1, self.d.0, self.d.1, self.m.0, self.m.1
        )
    }
}

fn point_bound(text: &str) -> Result<PointBound, ParseError> {
    let text = text.trim();
    if text == "n" {
        return Ok(PointBound::AboveN(0));
    }
    if let Some(rest) = text.strip_prefix("n+") {
        return Ok(PointBound::AboveN(int(rest)?));
    }
    if let Some(rest) = text.strip_prefix("n-") {
        return Ok(PointBound::AboveN(-int::<i64>(rest)?));
    }
    Ok(PointBound::Fixed(int(text)?))
}

fn range<T>(text: &str, one: impl Fn(&str) -> Result<T, ParseError>) -> Result<(T, T), ParseError>
where
    T: Copy,
{
    match text.split_once("..") {
        Some((lo, hi)) => Ok((one(lo)?, one(hi)?)),
        None => {
            let v = one(text)?;
            Ok((v, v))
        }
    }
}

pub fn parse_grid(text: &str) -> Result<GridSpec, ParseError> {
    let grid_err = |msg: String| ParseError::Grid(msg);
    let (mut n, mut s, mut d, mut m) = (None, None, None, None);
    for field in text.split(',').map(str::trim).filter(|f| !f.is_empty()) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| grid_err(format!("expected key=range, found {field:?}")))?;
        let fresh = match key.trim() {
            "n" => n.replace(range(value, int::<u32>)?).is_none(),
            "s" => s.replace(range(value, point_bound)?).is_none(),
            "d" => d.replace(range(value, int::<i64>)?).is_none(),
            "m" => m.replace(range(value, int::<i64>)?).is_none(),
            other => return Err(grid_err(format!("unknown key {other:?}"))),
        };
        if !fresh {
            return Err(grid_err(format!("key {:?} given twice", key.trim())));
        }
    }
    let missing = |k: &str| grid_err(format!("missing {k}"));
    let grid = GridSpec {
        n: n.ok_or_else(|| missing("n"))?,
        s: s.ok_or_else(|| missing("s"))?,
        d: d.ok_or_else(|| missing("d"))?,
        m: m.ok_or_else(|| missing("m"))?,
    };
    if grid.n.0 == 0 {
        return Err(grid_err("n must be at least 1".into()));
    }
    if grid.n.0 > grid.n.1 || grid.d.0 > grid.d.1 || grid.m.0 > grid.m.1 {
        return Err(grid_err("empty range".into()));
    }
    if grid.m.0 < 1 {
        return Err(grid_err("multiplicities must be at least 1".into()));
    }
    Ok(grid)
}
