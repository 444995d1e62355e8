//! Exact dimension counts for linear systems of hypersurfaces in `P^n` with
//! assigned multiplicities at points of a rational normal curve.
//!
//! A system `L_{n,d}(m_1, ..., m_s)` is the divisor `dH - sum m_i E_i` on the
//! blow-up of `P^n` at `s` points of the curve. Three independent evaluators
//! are provided:
//!
//! * [`formula`]: the closed alternating sum over joins `J(L_I, sigma_t)`
//!   weighted by the recursive function [`combin::f`];
//! * [`castelnuovo`]: the restriction recursion to an exceptional divisor;
//! * [`oracle`]: the corank of the exact interpolation matrix.
//!
//! [`evaluate`] routes a raw system to the appropriate evaluator.

pub mod castelnuovo;
pub mod combin;
pub mod error;
pub mod formula;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod system;

mod evaluate;

pub use error::{Error, Result};
pub use evaluate::{evaluate, evaluate_with, EvalOptions, Evaluator};
pub use formula::{dimension, ContributionRecord, DimensionReport, JoinClass, Method, ReportFlag};
pub use system::{normalize, vdim, LinearSystemSpec, NormalizationStep, NormalizedSystem};
