//! `h^0` as the corank of the interpolation matrix of fat points on the
//! standard rational normal curve.

mod bareiss;
mod matrix;
pub mod modp;
mod sweep;

use std::fmt;

use num_bigint::BigInt;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::system::LinearSystemSpec;

pub use bareiss::rank as exact_rank;
pub use matrix::{monomials, ConditionsLayout};
pub use sweep::{consistency_sweep, grid_instances, SweepOptions, SweepRecord, Verdict};

/// Default bound on `rows * cols`.
pub const DEFAULT_CAP_CELLS: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Fraction-free elimination over the integers.
    Exact,
    /// Largest rank seen modulo `trials` distinct random primes near `2^62`.
    Modular { trials: usize },
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleMode::Exact => f.write_str("exact"),
            OracleMode::Modular { trials } => write!(f, "modular:{trials}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamMode {
    /// Parameters `1, 2, ..., s`.
    Canonical,
    /// Distinct integers drawn from `1..=max`.
    Random { max: i64 },
}

/// Points `(t, t^2, ..., t^n)` of the rational normal curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoints {
    n: u32,
    params: Vec<i64>,
}

impl CurvePoints {
    pub fn new(n: u32, params: Vec<i64>) -> Result<Self> {
        let mut sorted = params.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition(
                "curve parameters must be distinct".into(),
            ));
        }
        Ok(CurvePoints { n, params })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Affine coordinates of the `i`-th point.
    pub fn point(&self, i: usize) -> Vec<BigInt> {
        let t = BigInt::from(self.params[i]);
        (1..=self.n).map(|j| t.pow(j)).collect()
    }
}

/// `s` points on the curve in `P^n`. Random draws are reproducible from
/// `seed`.
pub fn sample_points(n: u32, s: usize, mode: ParamMode, seed: u64) -> CurvePoints {
    let params = match mode {
        ParamMode::Canonical => (1..=s as i64).collect(),
        ParamMode::Random { max } => {
            let max = max.max(s as i64).max(1) as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            index::sample(&mut rng, max, s)
                .into_iter()
                .map(|i| i as i64 + 1)
                .collect()
        }
    };
    CurvePoints { n, params }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub mode: OracleMode,
    pub cap_cells: usize,
    /// Seeds the choice of primes in modular mode.
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            mode: OracleMode::Exact,
            cap_cells: DEFAULT_CAP_CELLS,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub h0: BigInt,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub mode: OracleMode,
    /// Exact mode, or a modular rank that is already maximal.
    pub certified: bool,
    /// Primes used in modular mode.
    pub primes: Vec<u64>,
}

/// `binom(n + d, n) - rank` of the conditions matrix at `pts`.
pub fn h0(
    spec: &LinearSystemSpec,
    pts: &CurvePoints,
    options: &OracleOptions,
) -> Result<OracleResult> {
    if pts.n() != spec.n() || pts.len() != spec.s() {
        return Err(Error::Precondition(format!(
            "{} points in P^{} given for a system of {} points in P^{}",
            pts.len(),
            pts.n(),
            spec.s(),
            spec.n()
        )));
    }
    let done = |h0: usize, rank, rows, cols, certified, primes| OracleResult {
        h0: BigInt::from(h0),
        rank,
        rows,
        cols,
        mode: options.mode,
        certified,
        primes,
    };
    if spec.d() < 0 {
        return Ok(done(0, 0, 0, 0, true, Vec::new()));
    }
    let layout = ConditionsLayout::new(spec.n(), spec.d(), spec.mults());
    let (rows, cols) = (layout.rows(), layout.cols());
    if rows.saturating_mul(cols) > options.cap_cells {
        return Err(Error::MatrixTooLarge {
            rows,
            cols,
            cap: options.cap_cells,
        });
    }
    if rows == 0 {
        return Ok(done(cols, 0, 0, cols, true, Vec::new()));
    }
    match options.mode {
        OracleMode::Exact => {
            let rank = bareiss::rank(layout.exact_rows(pts.params()));
            Ok(done(cols - rank, rank, rows, cols, true, Vec::new()))
        }
        OracleMode::Modular { trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            let mut primes: Vec<u64> = Vec::with_capacity(trials);
            while primes.len() < trials.max(1) {
                let p = modp::random_prime(&mut rng);
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
            let rank = primes
                .par_iter()
                .map(|&p| {
                    let ctx = modp::Montgomery::new(p);
                    let mut entries = layout.modular_entries(pts.params(), &ctx);
                    modp::rank_mod(&ctx, rows, cols, &mut entries)
                })
                .max()
                .expect("at least one prime");
            let certified = rank == rows.min(cols);
            Ok(done(cols - rank, rank, rows, cols, certified, primes))
        }
    }
}

/// [`h0`] at the canonical parameters `1..=s`, negative multiplicities
/// counted as 0.
pub fn oracle_h0(spec: &LinearSystemSpec, options: &OracleOptions) -> Result<OracleResult> {
    let pts = sample_points(spec.n(), spec.s(), ParamMode::Canonical, 0);
    h0(spec, &pts, options)
}
