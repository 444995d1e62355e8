use num_bigint::BigInt;
use num_traits::Zero;

use crate::castelnuovo::{Recursion, RecursionOptions};
use crate::error::{Error, Result};
use crate::formula::{self, ldim, planar_h0, DimensionReport, Method, ReportFlag};
use crate::oracle::{oracle_h0, OracleOptions};
use crate::system::{normalize, LinearSystemSpec, NormalizedSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Evaluator {
    /// Pick by shape: empty, line, few points, then the join sum.
    Auto,
    Formula,
    Ldim,
    Planar,
    Recursive,
    Oracle,
}

impl Evaluator {
    pub const ALL: [Evaluator; 6] = [
        Evaluator::Auto,
        Evaluator::Formula,
        Evaluator::Ldim,
        Evaluator::Planar,
        Evaluator::Recursive,
        Evaluator::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Evaluator::Auto => "auto",
            Evaluator::Formula => "formula",
            Evaluator::Ldim => "ldim",
            Evaluator::Planar => "planar",
            Evaluator::Recursive => "recursive",
            Evaluator::Oracle => "oracle",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == name)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EvalOptions {
    pub oracle: OracleOptions,
    pub recursion: RecursionOptions,
}

/// Evaluates `spec` with default options.
pub fn evaluate(spec: &LinearSystemSpec, evaluator: Evaluator) -> Result<DimensionReport> {
    evaluate_with(spec, evaluator, &EvalOptions::default())
}

/// Normalizes `spec` and computes `h^0` with the chosen evaluator. An
/// explicitly requested evaluator outside its domain is an error; `Auto`
/// never is.
pub fn evaluate_with(
    spec: &LinearSystemSpec,
    evaluator: Evaluator,
    options: &EvalOptions,
) -> Result<DimensionReport> {
    let sys = normalize(spec);
    match evaluator {
        Evaluator::Auto => auto(sys),
        Evaluator::Formula => {
            if sys.curve().is_none() {
                return Err(Error::TooFewPoints {
                    op: "formula",
                    n: sys.n(),
                    s: sys.s(),
                });
            }
            formula::dimension(&sys)
        }
        Evaluator::Ldim => {
            let v = ldim(sys.n(), sys.d(), sys.mults())?;
            Ok(DimensionReport::new(sys, Method::LinearSpans, v))
        }
        Evaluator::Planar => {
            let v = planar_h0(&sys)?;
            Ok(DimensionReport::new(sys, Method::Planar, v))
        }
        Evaluator::Recursive => {
            let v = Recursion::new(options.recursion).h0(&sys.to_spec())?;
            Ok(DimensionReport::new(sys, Method::Recursion, v))
        }
        Evaluator::Oracle => {
            let result = oracle_h0(spec, &options.oracle)?;
            let mut report = DimensionReport::new(sys, Method::Oracle, result.h0);
            if !result.certified {
                report.flags.push(ReportFlag::Probabilistic);
            }
            Ok(report)
        }
    }
}

fn auto(sys: NormalizedSystem) -> Result<DimensionReport> {
    let n = sys.n();
    if sys.d() < 0 || sys.exceeds_degree() {
        return Ok(DimensionReport::new(sys, Method::Empty, BigInt::zero()));
    }
    if n == 1 {
        let sum: i64 = sys.mults().iter().sum();
        let v = BigInt::from((sys.d() + 1 - sum).max(0));
        return Ok(DimensionReport::new(sys, Method::Line, v));
    }
    if sys.curve().is_none() {
        let v = ldim(n, sys.d(), sys.mults())?;
        return Ok(DimensionReport::new(sys, Method::LinearSpans, v));
    }
    formula::dimension(&sys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, d: i64, m: &[i64]) -> LinearSystemSpec {
        LinearSystemSpec::new(n, d, m.to_vec()).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for e in Evaluator::ALL {
            assert_eq!(Evaluator::from_name(e.name()), Some(e));
        }
        assert_eq!(Evaluator::from_name("magic"), None);
    }

    #[test]
    fn auto_routing() {
        let r = evaluate(
            &spec(5, 8, &[7, 6, 6, 5, 5, 5, 5, 5, 5, 5, 2, 2, 2]),
            Evaluator::Auto,
        )
        .unwrap();
        assert_eq!(r.method, Method::Joins);
        assert_eq!(r.dimension, BigInt::from(6));
        assert_eq!(r.normalized.trace().len(), 3);

        let r = evaluate(&spec(3, 1, &[1, 1]), Evaluator::Auto).unwrap();
        assert_eq!(r.method, Method::LinearSpans);
        assert_eq!(r.dimension, BigInt::from(2));

        let r = evaluate(&spec(1, 5, &[2, 3]), Evaluator::Auto).unwrap();
        assert_eq!(r.method, Method::Line);
        assert_eq!(r.dimension, BigInt::from(1));

        let r = evaluate(&spec(3, 2, &[3, 1]), Evaluator::Auto).unwrap();
        assert_eq!(r.method, Method::Empty);
        assert!(r.has_flag(ReportFlag::EmptyByMultiplicity));

        let r = evaluate(&spec(3, -2, &[]), Evaluator::Auto).unwrap();
        assert_eq!(r.method, Method::Empty);
        assert!(r.has_flag(ReportFlag::NegativeDegree));
    }

    #[test]
    fn explicit_domains() {
        let few = spec(3, 2, &[1, 1]);
        assert!(matches!(
            evaluate(&few, Evaluator::Formula),
            Err(Error::TooFewPoints { .. })
        ));
        assert!(matches!(
            evaluate(&spec(3, 6, &[2; 10]), Evaluator::Ldim),
            Err(Error::TooManyPoints { .. })
        ));
        assert!(matches!(
            evaluate(&spec(3, 6, &[2; 10]), Evaluator::Planar),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn evaluators_agree_on_double_conic() {
        let sp = spec(2, 4, &[2; 5]);
        for e in [
            Evaluator::Auto,
            Evaluator::Formula,
            Evaluator::Planar,
            Evaluator::Recursive,
            Evaluator::Oracle,
        ] {
            assert_eq!(
                evaluate(&sp, e).unwrap().dimension,
                BigInt::from(1),
                "{}",
                e.name()
            );
        }
    }

    #[test]
    fn modular_oracle_is_flagged_when_uncertified() {
        let options = EvalOptions {
            oracle: OracleOptions {
                mode: crate::oracle::OracleMode::Modular { trials: 1 },
                ..Default::default()
            },
            ..Default::default()
        };
        let r = evaluate_with(&spec(3, 6, &[2; 10]), Evaluator::Oracle, &options).unwrap();
        assert_eq!(r.dimension, BigInt::from(45));
        assert!(r.has_flag(ReportFlag::Probabilistic));
    }
}
