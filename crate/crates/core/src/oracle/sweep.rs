//! Side-by-side comparison of every evaluator with the oracle over a grid.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{oracle_h0, OracleOptions};
use crate::castelnuovo::{Recursion, RecursionOptions};
use crate::formula::{self, ldim, planar_h0};
use crate::parse::GridSpec;
use crate::report::json_int;
use crate::system::{normalize, LinearSystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Agree,
    /// Agreement, after points were clamped or dropped as redundant.
    AgreeNormalized,
    Disagree,
    /// Some evaluator failed inside its domain.
    Error,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Agree => "agree",
            Verdict::AgreeNormalized => "agree-normalized",
            Verdict::Disagree => "disagree",
            Verdict::Error => "error",
        }
    }

    pub fn is_agreement(self) -> bool {
        matches!(self, Verdict::Agree | Verdict::AgreeNormalized)
    }
}

/// One line of sweep output. `None` means the evaluator is outside its
/// domain or failed (see `errors`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: u32,
    pub d: i64,
    pub mults: Vec<i64>,
    pub s: usize,
    pub kc: Option<i64>,
    pub epsilon: Option<i64>,
    #[serde(with = "json_int::option")]
    pub oracle: Option<BigInt>,
    #[serde(with = "json_int::option")]
    pub formula: Option<BigInt>,
    #[serde(with = "json_int::option")]
    pub recursive: Option<BigInt>,
    #[serde(with = "json_int::option")]
    pub planar: Option<BigInt>,
    #[serde(with = "json_int::option")]
    pub ldim: Option<BigInt>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

impl SweepRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// Evaluators compared with the oracle, with their values.
    pub fn compared(&self) -> Vec<(&'static str, &BigInt)> {
        let Some(oracle) = &self.oracle else {
            return Vec::new();
        };
        let positive = oracle.is_positive();
        let mut out = Vec::new();
        if let Some(v) = &self.recursive {
            out.push(("recursive", v));
        }
        if let Some(v) = &self.planar {
            out.push(("planar", v));
        }
        if positive {
            if let Some(v) = &self.formula {
                out.push(("formula", v));
            }
            if let Some(v) = &self.ldim {
                out.push(("ldim", v));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SweepOptions {
    pub oracle: OracleOptions,
    pub recursion: RecursionOptions,
    /// Skip instances whose normalized system was already seen.
    pub dedup_normalized: bool,
}

/// Every system of the grid with non-increasing multiplicities.
pub fn grid_instances(grid: &GridSpec) -> Vec<LinearSystemSpec> {
    let mut out = Vec::new();
    for n in grid.n.0..=grid.n.1 {
        let s_lo = grid.s.0.at(n).max(0);
        let s_hi = grid.s.1.at(n);
        for s in s_lo..=s_hi {
            for d in grid.d.0..=grid.d.1 {
                let mut mults = vec![grid.m.1; s as usize];
                loop {
                    out.push(LinearSystemSpec::new(n, d, mults.clone()).expect("n >= 1"));
                    if !next_nonincreasing(&mut mults, grid.m.0) {
                        break;
                    }
                }
            }
        }
    }
    out
}

/// Steps through non-increasing vectors in reverse lexicographic order,
/// all entries at least `lo`.
fn next_nonincreasing(v: &mut [i64], lo: i64) -> bool {
    let Some(i) = v.iter().rposition(|&x| x > lo) else {
        return false;
    };
    let value = v[i] - 1;
    for x in &mut v[i..] {
        *x = value;
    }
    true
}

fn record(spec: &LinearSystemSpec, recursion: &Recursion, options: &SweepOptions) -> SweepRecord {
    let sys = normalize(spec);
    let n = sys.n();
    let mut errors = Vec::new();
    let mut keep = |name: &str, r: crate::Result<BigInt>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            errors.push(format!("{name}: {e}"));
            None
        }
    };
    let oracle = keep("oracle", oracle_h0(spec, &options.oracle).map(|r| r.h0));
    let empty = sys.d() < 0 || sys.exceeds_degree();
    let formula = match sys.curve() {
        Some(_) => keep("formula", formula::dimension(&sys).map(|r| r.dimension)),
        None => None,
    };
    let ldim = if sys.curve().is_none() && !empty {
        keep("ldim", ldim(n, sys.d(), sys.mults()))
    } else {
        None
    };
    let planar = if n == 2 && sys.s() >= 5 {
        keep("planar", planar_h0(&sys))
    } else {
        None
    };
    let recursive = keep("recursive", recursion.h0(spec));

    let mut rec = SweepRecord {
        n,
        d: sys.d(),
        mults: spec.mults().to_vec(),
        s: spec.s(),
        kc: sys.kc(),
        epsilon: sys.epsilon(),
        oracle,
        formula,
        recursive,
        planar,
        ldim,
        verdict: Verdict::Agree,
        errors,
    };
    rec.verdict = if !rec.errors.is_empty() {
        Verdict::Error
    } else if rec
        .compared()
        .iter()
        .any(|(_, v)| Some(*v) != rec.oracle.as_ref())
    {
        Verdict::Disagree
    } else if sys.is_unchanged() {
        Verdict::Agree
    } else {
        Verdict::AgreeNormalized
    };
    rec
}

/// Runs all evaluators on every instance. Failures are recorded per
/// instance; the sweep itself never fails. Output order follows `instances`.
pub fn consistency_sweep(
    instances: &[LinearSystemSpec],
    options: &SweepOptions,
) -> Vec<SweepRecord> {
    let instances: Vec<&LinearSystemSpec> = if options.dedup_normalized {
        let mut seen = HashSet::new();
        instances
            .iter()
            .filter(|spec| seen.insert(normalize(spec).to_spec()))
            .collect()
    } else {
        instances.iter().collect()
    };
    let recursion = Recursion::new(options.recursion);
    instances
        .into_par_iter()
        .map(|spec| record(spec, &recursion, options))
        .collect()
}
