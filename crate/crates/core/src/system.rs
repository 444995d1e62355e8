//! Linear systems `L_{n,d}(m_1, ..., m_s)` and their normalization.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combin::binom;
use crate::error::{Error, Result};
use crate::formula::{compute_epsilon, compute_kc};

/// Raw user input: degree `d` hypersurfaces of `P^n` with multiplicities
/// `mults` at points of a rational normal curve. Any integers are accepted
/// for `d` and the multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearSystemSpec {
    n: u32,
    d: i64,
    mults: Vec<i64>,
}

impl LinearSystemSpec {
    pub fn new(n: u32, d: i64, mults: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(LinearSystemSpec { n, d, mults })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn s(&self) -> usize {
        self.mults.len()
    }

    /// The divisor `D + E_i`: multiplicity at point `i` lowered by one.
    pub fn plus_exceptional(&self, i: usize) -> Self {
        let mut mults = self.mults.clone();
        mults[i] -= 1;
        LinearSystemSpec {
            mults,
            ..self.clone()
        }
    }

    /// The divisor `D - E_i`.
    pub fn minus_exceptional(&self, i: usize) -> Self {
        let mut mults = self.mults.clone();
        mults[i] += 1;
        LinearSystemSpec {
            mults,
            ..self.clone()
        }
    }
}

/// One step of [`normalize`]. Points are numbered from 1 in input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum NormalizationStep {
    /// A negative multiplicity was raised to 0.
    Clamp { point: usize, from: i64 },
    /// A point of multiplicity 0 imposes nothing and was removed.
    DropZero { point: usize },
    /// `0 < m < k_C`: the point is redundant and was removed.
    DropRedundant {
        point: usize,
        multiplicity: i64,
        kc: i64,
    },
}

/// `k_C` and the exceeding number of a system with `s >= n + 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveParams {
    pub kc: i64,
    pub epsilon: i64,
}

/// A clamped, sorted, non-redundant system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedSystem {
    input: LinearSystemSpec,
    mults: Vec<i64>,
    curve: Option<CurveParams>,
    trace: Vec<NormalizationStep>,
}

impl NormalizedSystem {
    pub fn input(&self) -> &LinearSystemSpec {
        &self.input
    }

    pub fn n(&self) -> u32 {
        self.input.n
    }

    pub fn d(&self) -> i64 {
        self.input.d
    }

    /// Non-increasing, all entries at least 1.
    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn s(&self) -> usize {
        self.mults.len()
    }

    /// Present exactly when `s >= n + 3`.
    pub fn curve(&self) -> Option<CurveParams> {
        self.curve
    }

    pub fn kc(&self) -> Option<i64> {
        self.curve.map(|c| c.kc)
    }

    pub fn epsilon(&self) -> Option<i64> {
        self.curve.map(|c| c.epsilon)
    }

    pub fn trace(&self) -> &[NormalizationStep] {
        &self.trace
    }

    /// True when normalization changed nothing but the order of the points.
    pub fn is_unchanged(&self) -> bool {
        self.trace.is_empty()
    }

    pub fn to_spec(&self) -> LinearSystemSpec {
        LinearSystemSpec {
            n: self.input.n,
            d: self.input.d,
            mults: self.mults.clone(),
        }
    }

    pub fn vdim(&self) -> BigInt {
        vdim(self.n(), self.d(), &self.mults)
    }

    /// Some multiplicity exceeds the degree, which forces the zero form.
    pub fn exceeds_degree(&self) -> bool {
        self.d() >= 0 && self.mults.first().is_some_and(|&m| m > self.d())
    }
}

/// `binom(n + d, n) - sum binom(n + m_i - 1, n)`.
pub fn vdim(n: u32, d: i64, mults: &[i64]) -> BigInt {
    let n = i64::from(n);
    let mut v = binom(n + d, n);
    for &m in mults {
        v -= binom(n + m - 1, n);
    }
    v
}

/// Clamp negative multiplicities, drop zeros, then drop redundant points
/// one at a time (smallest first), recomputing `k_C` after every removal.
pub fn normalize(spec: &LinearSystemSpec) -> NormalizedSystem {
    let n = spec.n as usize;
    let mut trace = Vec::new();
    let mut points: Vec<(usize, i64)> = Vec::with_capacity(spec.s());
    for (i, &m) in spec.mults.iter().enumerate() {
        let point = i + 1;
        let m = if m < 0 {
            trace.push(NormalizationStep::Clamp { point, from: m });
            0
        } else {
            m
        };
        if m == 0 {
            trace.push(NormalizationStep::DropZero { point });
        } else {
            points.push((point, m));
        }
    }
    // Stable sort: among equal multiplicities the input order is kept, so
    // the last entry is always the highest-numbered smallest point.
    points.sort_by_key(|p| std::cmp::Reverse(p.1));

    let mut mults: Vec<i64> = points.iter().map(|p| p.1).collect();
    while mults.len() >= n + 3 {
        let kc = compute_kc(spec.n, spec.d, &mults).expect("s >= n + 3 checked");
        let smallest = *mults.last().expect("non-empty");
        if kc >= 1 && smallest < kc {
            let (point, multiplicity) = points.pop().expect("non-empty");
            mults.pop();
            trace.push(NormalizationStep::DropRedundant {
                point,
                multiplicity,
                kc,
            });
        } else {
            break;
        }
    }

    let curve = (mults.len() >= n + 3).then(|| {
        let kc = compute_kc(spec.n, spec.d, &mults).expect("s >= n + 3 checked");
        let epsilon = compute_epsilon(spec.n, spec.d, &mults).expect("s >= n + 3 checked");
        CurveParams { kc, epsilon }
    });

    NormalizedSystem {
        input: spec.clone(),
        mults,
        curve,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(n: u32, d: i64, m: &[i64]) -> LinearSystemSpec {
        LinearSystemSpec::new(n, d, m.to_vec()).unwrap()
    }

    #[test]
    fn zero_dimension_rejected() {
        assert_eq!(
            LinearSystemSpec::new(0, 3, vec![1]),
            Err(Error::ZeroDimension)
        );
    }

    #[test]
    fn worked_example_drops_three_points() {
        let sys = normalize(&spec(5, 8, &[7, 6, 6, 5, 5, 5, 5, 5, 5, 5, 2, 2, 2]));
        assert_eq!(sys.mults(), &[7, 6, 6, 5, 5, 5, 5, 5, 5, 5]);
        assert_eq!(sys.kc(), Some(5));
        assert_eq!(sys.epsilon(), Some(1));
        let dropped: Vec<_> = sys
            .trace()
            .iter()
            .map(|s| match s {
                NormalizationStep::DropRedundant { point, kc, .. } => (*point, *kc),
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        // k_C is 4 for the 13-point system and stays 4 until the last drop.
        assert_eq!(dropped, vec![(13, 4), (12, 4), (11, 4)]);
    }

    #[test]
    fn clamps_and_drops_zeros() {
        let sys = normalize(&spec(3, 4, &[2, 0, -1, 2]));
        assert_eq!(sys.mults(), &[2, 2]);
        assert_eq!(sys.s(), 2);
        assert_eq!(sys.curve(), None);
        assert_eq!(
            sys.trace(),
            &[
                NormalizationStep::DropZero { point: 2 },
                NormalizationStep::Clamp { point: 3, from: -1 },
                NormalizationStep::DropZero { point: 3 },
            ]
        );
    }

    #[test]
    fn five_simple_points_on_a_conic() {
        let sys = normalize(&spec(2, 2, &[1, 1, 1, 1, 1]));
        assert_eq!(sys.mults(), &[1, 1, 1, 1, 1]);
        assert_eq!(sys.kc(), Some(1));
        assert_eq!(sys.epsilon(), Some(0));
        assert!(sys.is_unchanged());
    }

    #[test]
    fn vdim_examples() {
        assert_eq!(normalize(&spec(2, 2, &[1; 5])).vdim(), BigInt::from(1));
        assert_eq!(
            normalize(&spec(5, 8, &[7, 6, 6, 5, 5, 5, 5, 5, 5, 5])).vdim(),
            BigInt::from(-561)
        );
        assert_eq!(normalize(&spec(3, 6, &[2; 10])).vdim(), BigInt::from(44));
    }

    #[test]
    fn vdim_of_negative_degree_is_minus_conditions() {
        // binom(n + d, n) vanishes for d < 0.
        assert_eq!(vdim(2, -1, &[1, 1]), BigInt::from(-2));
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(
            n in 1u32..5,
            d in -2i64..9,
            mults in proptest::collection::vec(-2i64..7, 0..12),
        ) {
            let once = normalize(&LinearSystemSpec::new(n, d, mults).unwrap());
            let twice = normalize(&once.to_spec());
            prop_assert_eq!(twice.mults(), once.mults());
            prop_assert!(twice.is_unchanged());
            prop_assert_eq!(twice.curve(), once.curve());
        }

        #[test]
        fn normalized_invariants(
            n in 1u32..5,
            d in -2i64..9,
            mults in proptest::collection::vec(-2i64..7, 0..12),
        ) {
            let sys = normalize(&LinearSystemSpec::new(n, d, mults).unwrap());
            prop_assert!(sys.mults().windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(sys.mults().iter().all(|&m| m >= 1));
            let s = sys.s() as i64;
            let n = i64::from(n);
            match sys.curve() {
                Some(CurveParams { kc, epsilon }) => {
                    prop_assert!(s >= n + 3);
                    if kc >= 1 {
                        prop_assert!(sys.mults().iter().all(|&m| m >= kc));
                    }
                    let sum: i64 = sys.mults().iter().sum();
                    prop_assert_eq!(kc * (s - n - 2), sum - n * d + epsilon);
                    prop_assert!((0..=s - n - 3).contains(&epsilon));
                }
                None => prop_assert!(s <= n + 2),
            }
        }
    }
}
