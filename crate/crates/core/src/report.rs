//! Structured (JSON) and human-readable renderings of a [`DimensionReport`].

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::formula::{ContributionRecord, DimensionReport};
use crate::oracle::Verdict;
use crate::parse::format_mults;
use crate::system::NormalizationStep;

/// Serde adapter writing big integers as bare JSON numbers.
pub mod json_int {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{de, ser, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Number::from_str(&v.to_string())
            .map_err(ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let number = Number::deserialize(d)?;
        BigInt::from_str(&number.to_string()).map_err(de::Error::custom)
    }

    /// The same for `Option<BigInt>`, with `None` as `null`.
    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
            Option::<Number>::deserialize(d)?
                .map(|n| BigInt::from_str(&n.to_string()).map_err(de::Error::custom))
                .transpose()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialEffect {
    pub c: u32,
    pub sigma: i64,
    pub t: u32,
    pub k: i64,
    pub r: i64,
    #[serde(with = "json_int")]
    pub count: BigInt,
    #[serde(with = "json_int")]
    pub f: BigInt,
    #[serde(with = "json_int")]
    pub signed: BigInt,
}

impl From<&ContributionRecord> for SpecialEffect {
    fn from(rec: &ContributionRecord) -> Self {
        SpecialEffect {
            c: rec.join.c,
            sigma: rec.join.sigma,
            t: rec.join.t,
            k: rec.join.k,
            r: rec.join.r,
            count: rec.join.count.clone(),
            f: rec.fvalue.clone(),
            signed: rec.signed_total.clone(),
        }
    }
}

/// The machine-readable report; field names and order are stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredReport {
    pub n: u32,
    pub d: i64,
    pub mults: Vec<i64>,
    pub s: usize,
    pub normalized_mults: Vec<i64>,
    pub kc: Option<i64>,
    pub epsilon: Option<i64>,
    #[serde(with = "json_int")]
    pub vdim: BigInt,
    #[serde(with = "json_int")]
    pub dimension: BigInt,
    #[serde(with = "json_int")]
    pub speciality: BigInt,
    pub flags: Vec<String>,
    pub evaluator: String,
    pub special_effects: Vec<SpecialEffect>,
    pub trace: Vec<NormalizationStep>,
    pub verdict: Option<Verdict>,
}

impl StructuredReport {
    pub fn new(report: &DimensionReport, verdict: Option<Verdict>) -> Self {
        StructuredReport {
            n: report.input.n(),
            d: report.input.d(),
            mults: report.input.mults().to_vec(),
            s: report.input.s(),
            normalized_mults: report.normalized.mults().to_vec(),
            kc: report.kc(),
            epsilon: report.epsilon(),
            vdim: report.vdim.clone(),
            dimension: report.dimension.clone(),
            speciality: report.speciality.clone(),
            flags: report.flags.iter().map(|f| f.name().to_string()).collect(),
            evaluator: report.method.name().to_string(),
            special_effects: report
                .special_effects
                .iter()
                .map(SpecialEffect::from)
                .collect(),
            trace: report.normalized.trace().to_vec(),
            verdict,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn describe_step(step: &NormalizationStep) -> String {
    match *step {
        NormalizationStep::Clamp { point, from } => {
            format!("point {point}: multiplicity {from} raised to 0")
        }
        NormalizationStep::DropZero { point } => format!("point {point}: multiplicity 0, dropped"),
        NormalizationStep::DropRedundant {
            point,
            multiplicity,
            kc,
        } => format!("point {point}: multiplicity {multiplicity} < k_C = {kc}, redundant, dropped"),
    }
}

/// `L_{n,d}(7,6^2,5^7)`.
pub fn system_label(n: u32, d: i64, mults: &[i64]) -> String {
    format!("L_{{{n},{d}}}({})", format_mults(mults))
}

/// Name of the `r`-dimensional cycles in a group.
pub fn cycle_name(r: i64) -> String {
    match r {
        1 => "curves".into(),
        2 => "surfaces".into(),
        r => format!("{r}folds"),
    }
}

/// Dimension, virtual dimension, speciality and normalization trace.
pub fn render_dimension(report: &DimensionReport) -> String {
    let mut out = String::new();
    let input = &report.input;
    let _ = writeln!(
        out,
        "system      {}",
        system_label(input.n(), input.d(), input.mults())
    );
    if !report.normalized.is_unchanged() {
        let _ = writeln!(
            out,
            "normalized  {}",
            system_label(input.n(), input.d(), report.normalized.mults())
        );
        for step in report.normalized.trace() {
            let _ = writeln!(out, "  {}", describe_step(step));
        }
    }
    if let (Some(kc), Some(eps)) = (report.kc(), report.epsilon()) {
        let _ = writeln!(out, "kC          {kc}");
        let _ = writeln!(out, "epsilon     {eps}");
    }
    let _ = writeln!(out, "vdim        {}", report.vdim);
    let _ = writeln!(out, "dimension   {}", report.dimension);
    let special = if report.speciality > BigInt::from(0) {
        "special"
    } else {
        "non-special"
    };
    let _ = writeln!(out, "speciality  {} ({special})", report.speciality);
    let _ = writeln!(out, "evaluator   {}", report.method.name());
    if !report.flags.is_empty() {
        let names: Vec<&str> = report.flags.iter().map(|f| f.name()).collect();
        let _ = writeln!(out, "flags       {}", names.join(", "));
    }
    out
}

/// Special-effect join classes grouped by cycle dimension, then the total.
pub fn render_special_effects(report: &DimensionReport) -> String {
    let mut out = String::new();
    let input = &report.input;
    let _ = write!(out, "{}", system_label(input.n(), input.d(), input.mults()));
    if !report.normalized.is_unchanged() {
        let _ = write!(
            out,
            " -> {}",
            system_label(input.n(), input.d(), report.normalized.mults())
        );
    }
    out.push('\n');
    if let (Some(kc), Some(eps)) = (report.kc(), report.epsilon()) {
        let _ = writeln!(out, "kC = {kc}, epsilon = {eps}");
    }
    if report.special_effects.is_empty() {
        let _ = writeln!(out, "no special-effect varieties");
    } else {
        let mut effects: Vec<&ContributionRecord> = report.special_effects.iter().collect();
        effects.sort_by_key(|rec| {
            (
                rec.join.r,
                rec.join.t,
                rec.join.c,
                std::cmp::Reverse(rec.join.sigma),
            )
        });
        let mut current = None;
        for rec in effects {
            let j = &rec.join;
            if current != Some(j.r) {
                current = Some(j.r);
                let _ = writeln!(out, "{}:", cycle_name(j.r));
            }
            let _ = writeln!(
                out,
                "  c={} sigma={} t={} k={} r={} count={} f={} signed={}",
                j.c, j.sigma, j.t, j.k, j.r, j.count, rec.fvalue, rec.signed_total
            );
        }
    }
    let _ = writeln!(out, "vdim = {}", report.vdim);
    let _ = writeln!(out, "dimension = {}", report.dimension);
    out
}
