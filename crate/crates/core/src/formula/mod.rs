//! The dimension formula for `s >= n + 3` points, the linear-span formula for
//! `s <= n + 2` points, the planar formula and two corollaries.
//!
//! For a non-redundant system with `s >= n + 3`,
//!
//! ```text
//! h^0 = sum_{t <= n/2} sum_{|I| <= n - 2t} (-1)^|I| F_t(n + k_{I,t} - r_{I,t} - 1, s, eps, n)
//! ```
//!
//! where `k_{I,t} = sum_{i in I} m_i + t k_C - (t + |I| - 1) d` and
//! `r_{I,t} = |I| + 2t - 1`. Terms only depend on `(|I|, sum_{i in I} m_i, t)`
//! so the sum runs over [`JoinClass`]es weighted by subset counts.

mod corollaries;
mod joins;
mod params;
mod planar;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::combin::{binom, f_t};
use crate::error::{Error, Result};
use crate::system::{LinearSystemSpec, NormalizedSystem};

pub use corollaries::{double_points_h1, regularity_index, DoublePointRegime, DoublePoints};
pub use joins::{enumerate_join_classes, special_joins, Join, JoinClass, SubsetSums};
pub use params::{compute_epsilon, compute_kc, join_k, join_r};
pub use planar::{
    g_value, planar_h0, planar_reduction, Component, PlanarReduction, ReductionEnd, ReductionStep,
};

/// One term of the dimension formula, summed over a [`JoinClass`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionRecord {
    pub join: JoinClass,
    /// `F_t(n + k - r - 1, s, eps, n)`.
    pub fvalue: BigInt,
    /// `(-1)^c * count * fvalue`.
    pub signed_total: BigInt,
}

/// How a dimension was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Sum over join classes (`s >= n + 3`).
    Joins,
    /// Sum over linear spans (`s <= n + 2`).
    LinearSpans,
    /// `G(D)` after reduction to a nef class (`n = 2`).
    Planar,
    /// `max(0, d + 1 - sum m_i)` on the line.
    Line,
    /// Restriction recursion.
    Recursion,
    /// Corank of the interpolation matrix.
    Oracle,
    /// `d < 0` or some `m_i > d`: only the zero form.
    Empty,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Joins => "formula",
            Method::LinearSpans => "ldim",
            Method::Planar => "planar",
            Method::Line => "line",
            Method::Recursion => "recursive",
            Method::Oracle => "oracle",
            Method::Empty => "empty",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportFlag {
    /// The join sum came out `<= 0`; the system is likely empty but the sum
    /// is not claimed to be `h^0` there.
    FormulaNonpositive,
    /// Some multiplicity exceeds the degree.
    EmptyByMultiplicity,
    NegativeDegree,
    /// `dimension <= 0`, so speciality is reported as `max(dimension - vdim, 0)`.
    SpecialityClipped,
    /// Oracle rank taken modulo primes and not already maximal.
    Probabilistic,
}

impl ReportFlag {
    pub fn name(self) -> &'static str {
        match self {
            ReportFlag::FormulaNonpositive => "formula-nonpositive",
            ReportFlag::EmptyByMultiplicity => "empty-by-multiplicity",
            ReportFlag::NegativeDegree => "negative-degree",
            ReportFlag::SpecialityClipped => "speciality-clipped",
            ReportFlag::Probabilistic => "probabilistic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub input: LinearSystemSpec,
    pub normalized: NormalizedSystem,
    pub method: Method,
    pub dimension: BigInt,
    pub vdim: BigInt,
    pub speciality: BigInt,
    pub flags: Vec<ReportFlag>,
    /// Terms with a nonzero `F` value (join sum only).
    pub contributions: Vec<ContributionRecord>,
    /// Classes with `k >= 1` and `r >= 1`: the joins forced into the base
    /// locus (join sum only).
    pub special_effects: Vec<ContributionRecord>,
}

impl DimensionReport {
    pub fn new(normalized: NormalizedSystem, method: Method, dimension: BigInt) -> Self {
        let vdim = normalized.vdim();
        let mut flags = Vec::new();
        if normalized.d() < 0 {
            flags.push(ReportFlag::NegativeDegree);
        } else if normalized.exceeds_degree() {
            flags.push(ReportFlag::EmptyByMultiplicity);
        }
        let speciality = if dimension.is_positive() {
            &dimension - vdim.clone().max(BigInt::zero())
        } else {
            flags.push(ReportFlag::SpecialityClipped);
            (&dimension - &vdim).max(BigInt::zero())
        };
        DimensionReport {
            input: normalized.input().clone(),
            normalized,
            method,
            dimension,
            vdim,
            speciality,
            flags,
            contributions: Vec::new(),
            special_effects: Vec::new(),
        }
    }

    pub fn has_flag(&self, flag: ReportFlag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn kc(&self) -> Option<i64> {
        self.normalized.kc()
    }

    pub fn epsilon(&self) -> Option<i64> {
        self.normalized.epsilon()
    }
}

fn evaluate_classes(sys: &NormalizedSystem, prune: bool) -> Result<Vec<ContributionRecord>> {
    let curve = sys.curve().ok_or(Error::TooFewPoints {
        op: "dimension",
        n: sys.n(),
        s: sys.s(),
    })?;
    let n = sys.n();
    let s = sys.s() as i64;
    let classes = enumerate_join_classes(sys)?;
    Ok(classes
        .into_par_iter()
        .map(|join| {
            let fvalue = if prune && join.is_pruned(n) {
                BigInt::zero()
            } else {
                f_t(join.t, join.f_argument(n), s, curve.epsilon, i64::from(n))
            };
            let mut signed_total = &join.count * &fvalue;
            if join.c % 2 == 1 {
                signed_total = -signed_total;
            }
            ContributionRecord {
                join,
                fvalue,
                signed_total,
            }
        })
        .collect())
}

/// The join sum, with or without skipping classes known to contribute 0.
pub fn join_sum(sys: &NormalizedSystem, prune: bool) -> Result<BigInt> {
    Ok(evaluate_classes(sys, prune)?
        .into_iter()
        .map(|rec| rec.signed_total)
        .sum())
}

/// `h^0` of a non-redundant system with `s >= n + 3` by the join sum. The raw
/// sum is reported; when it is `<= 0` the report carries
/// [`ReportFlag::FormulaNonpositive`].
pub fn dimension(sys: &NormalizedSystem) -> Result<DimensionReport> {
    let records = evaluate_classes(sys, true)?;
    let total: BigInt = records.iter().map(|rec| &rec.signed_total).sum();
    let mut report = DimensionReport::new(sys.clone(), Method::Joins, total);
    if !report.dimension.is_positive() {
        report.flags.push(ReportFlag::FormulaNonpositive);
    }
    report.special_effects = records
        .iter()
        .filter(|rec| rec.join.k >= 1 && !rec.join.is_trivial())
        .cloned()
        .collect();
    report.contributions = records
        .into_iter()
        .filter(|rec| !rec.fvalue.is_zero())
        .collect();
    Ok(report)
}

/// `sum_I (-1)^|I| binom(n + k_I - |I|, n)` over all subsets `I`, with
/// `k_I = sum_{i in I} m_i - (|I| - 1) d`. No restriction on `s`.
pub fn ldim_sum(n: u32, d: i64, mults: &[i64]) -> BigInt {
    let n = i64::from(n);
    let sums = SubsetSums::new(mults, mults.len());
    let mut total = BigInt::zero();
    for c in 0..=mults.len() {
        let ci = c as i64;
        for (sigma, count) in sums.of_size(c) {
            let k = sigma - (ci - 1) * d;
            let term = count * binom(n + k - ci, n);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    total
}

/// `h^0` for `s <= n + 2` points of positive multiplicity, all at most `d`:
/// the linear-span sum, clipped at 0.
pub fn ldim(n: u32, d: i64, mults: &[i64]) -> Result<BigInt> {
    if mults.len() as i64 > i64::from(n) + 2 {
        return Err(Error::TooManyPoints {
            op: "ldim",
            n,
            s: mults.len(),
        });
    }
    if mults.iter().any(|&m| m < 1) {
        return Err(Error::Precondition(
            "ldim needs positive multiplicities".into(),
        ));
    }
    Ok(ldim_sum(n, d, mults).max(BigInt::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::normalize;
    use proptest::prelude::*;

    fn sys(n: u32, d: i64, m: &[i64]) -> NormalizedSystem {
        normalize(&LinearSystemSpec::new(n, d, m.to_vec()).unwrap())
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn worked_example() {
        let report = dimension(&sys(5, 8, &[7, 6, 6, 5, 5, 5, 5, 5, 5, 5, 2, 2, 2])).unwrap();
        assert_eq!(report.dimension, big(6));
        assert_eq!(report.vdim, big(-561));
        assert_eq!(report.speciality, big(6));
        assert_eq!(report.kc(), Some(5));
        assert_eq!(report.epsilon(), Some(1));
        let cone = report
            .contributions
            .iter()
            .find(|rec| (rec.join.c, rec.join.sigma, rec.join.t) == (1, 6, 1))
            .unwrap();
        assert_eq!(cone.fvalue, big(8));
        assert_eq!(cone.signed_total, big(-16));
        let total: BigInt = report.contributions.iter().map(|r| &r.signed_total).sum();
        assert_eq!(total, report.dimension);
    }

    #[test]
    fn double_points_in_space() {
        let report = dimension(&sys(3, 6, &[2; 10])).unwrap();
        assert_eq!(report.dimension, big(45));
        assert_eq!(report.speciality, big(1));
        // The only contributing special effect is the curve itself.
        let special: Vec<_> = report
            .special_effects
            .iter()
            .filter(|rec| !rec.fvalue.is_zero())
            .collect();
        assert_eq!(special.len(), 1);
        assert_eq!((special[0].join.c, special[0].join.t), (0, 1));
        assert_eq!(special[0].signed_total, big(1));
    }

    #[test]
    fn double_conic() {
        assert_eq!(dimension(&sys(2, 4, &[2; 5])).unwrap().dimension, big(1));
    }

    #[test]
    fn few_points_are_rejected() {
        assert!(matches!(
            dimension(&sys(3, 4, &[2, 2])),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn ldim_examples() {
        assert_eq!(ldim(2, 2, &[1, 1]), Ok(big(4)));
        assert_eq!(ldim(2, 1, &[1, 1]), Ok(big(1)));
        assert_eq!(ldim(3, 2, &[2, 2]), Ok(big(3)));
        assert_eq!(ldim(3, 1, &[1, 1]), Ok(big(2)));
        assert!(matches!(
            ldim(2, 3, &[1; 5]),
            Err(Error::TooManyPoints { .. })
        ));
    }

    #[test]
    fn empty_report_flags() {
        let report = DimensionReport::new(sys(2, 2, &[3, 1]), Method::Empty, BigInt::zero());
        assert!(report.has_flag(ReportFlag::EmptyByMultiplicity));
        assert!(report.has_flag(ReportFlag::SpecialityClipped));
        // vdim = 6 - 6 - 1 < 0.
        assert_eq!(report.speciality, big(1));
    }

    fn brute_ldim(n: u32, d: i64, m: &[i64]) -> BigInt {
        let n = i64::from(n);
        (0u32..1 << m.len())
            .map(|mask| {
                let c = i64::from(mask.count_ones());
                let sigma: i64 = (0..m.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| m[i])
                    .sum();
                let v = binom(n + sigma - (c - 1) * d - c, n);
                if c % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    proptest! {
        #[test]
        fn ldim_dp_matches_subsets(
            n in 1u32..6,
            d in 0i64..10,
            m in proptest::collection::vec(1i64..8, 0..9),
        ) {
            prop_assert_eq!(ldim_sum(n, d, &m), brute_ldim(n, d, &m));
        }

        #[test]
        fn pruning_is_sound(
            (n, d, m) in (1u32..6).prop_flat_map(|n| (
                Just(n),
                0i64..12,
                proptest::collection::vec(1i64..6, n as usize + 3..n as usize + 8),
            )),
        ) {
            let s = sys(n, d, &m);
            prop_assume!(s.curve().is_some());
            prop_assert_eq!(join_sum(&s, true).unwrap(), join_sum(&s, false).unwrap());
        }

        #[test]
        fn no_special_effects_means_virtual_dimension(
            n in 2u32..5,
            extra in 3usize..7,
            d in 4i64..12,
            m in 1i64..4,
        ) {
            // Homogeneous systems of low multiplicity: no line, curve or join
            // is forced into the base locus.
            let mults = vec![m; n as usize + extra];
            let s = sys(n, d, &mults);
            prop_assume!(s.is_unchanged());
            let report = dimension(&s).unwrap();
            prop_assume!(report.special_effects.is_empty());
            prop_assert_eq!(&report.dimension, &s.vdim());
            prop_assert!(report.contributions.iter().all(|rec| rec.join.is_trivial()));
        }
    }
}
