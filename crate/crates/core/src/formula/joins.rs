//! Join classes `J(L_I, sigma_t)` grouped by `(|I|, sum_{i in I} m_i, t)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::params::{join_k, join_r};
use crate::error::{Error, Result};
use crate::system::NormalizedSystem;

/// `N(c, sigma)`: how many `c`-subsets of a multiplicity multiset have sum
/// `sigma`, for `c <= c_max`. Coefficients of `prod_i (1 + x y^{m_i})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSums {
    by_size: Vec<BTreeMap<i64, BigInt>>,
}

impl SubsetSums {
    pub fn new(mults: &[i64], c_max: usize) -> Self {
        let mut by_size = vec![BTreeMap::new(); c_max + 1];
        by_size[0].insert(0, BigInt::one());
        for (seen, &m) in mults.iter().enumerate() {
            // Descending in c so each point enters a subset at most once.
            for c in (0..c_max.min(seen + 1)).rev() {
                let shifted: Vec<(i64, BigInt)> = by_size[c]
                    .iter()
                    .map(|(&sigma, count)| (sigma + m, count.clone()))
                    .collect();
                for (sigma, count) in shifted {
                    *by_size[c + 1].entry(sigma).or_insert_with(BigInt::zero) += count;
                }
            }
        }
        SubsetSums { by_size }
    }

    pub fn c_max(&self) -> usize {
        self.by_size.len() - 1
    }

    /// `(sigma, N(c, sigma))` in increasing `sigma`, nonzero counts only.
    pub fn of_size(&self, c: usize) -> impl Iterator<Item = (i64, &BigInt)> {
        self.by_size
            .get(c)
            .into_iter()
            .flat_map(|row| row.iter().map(|(&sigma, count)| (sigma, count)))
    }

    pub fn count(&self, c: usize, sigma: i64) -> BigInt {
        self.by_size
            .get(c)
            .and_then(|row| row.get(&sigma))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

/// All joins `J(L_I, sigma_t)` with `|I| = c` and `sum_{i in I} m_i = sigma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinClass {
    pub c: u32,
    pub sigma: i64,
    pub t: u32,
    pub k: i64,
    pub r: i64,
    pub count: BigInt,
}

impl JoinClass {
    /// First argument of `F_t` in this class's term: `n + k - r - 1`.
    pub fn f_argument(&self, n: u32) -> i64 {
        i64::from(n) + self.k - self.r - 1
    }

    /// The term is known to vanish: `F_t(a, ...) = 0` for `a < n - t`.
    pub fn is_pruned(&self, n: u32) -> bool {
        self.f_argument(n) < i64::from(n) - i64::from(self.t)
    }

    /// The ambient term `I = {}`, `t = 0` or a single point.
    pub fn is_trivial(&self) -> bool {
        self.r <= 0
    }
}

fn curve_params(sys: &NormalizedSystem, op: &'static str) -> Result<(i64, i64)> {
    match sys.curve() {
        Some(curve) => Ok((curve.kc, curve.epsilon)),
        None => Err(Error::TooFewPoints {
            op,
            n: sys.n(),
            s: sys.s(),
        }),
    }
}

/// Every class indexed by the dimension formula: `0 <= t <= n/2` and
/// `0 <= c <= n - 2t`, one entry per attained subset sum. Ordered by `t`,
/// then `c`, then `sigma`.
pub fn enumerate_join_classes(sys: &NormalizedSystem) -> Result<Vec<JoinClass>> {
    let (kc, _) = curve_params(sys, "join enumeration")?;
    let n = sys.n();
    let sums = SubsetSums::new(sys.mults(), n as usize);
    Ok(classes_from_sums(n, sys.d(), kc, &sums))
}

pub(crate) fn classes_from_sums(n: u32, d: i64, kc: i64, sums: &SubsetSums) -> Vec<JoinClass> {
    let mut out = Vec::new();
    for t in 0..=n / 2 {
        for c in 0..=n - 2 * t {
            for (sigma, count) in sums.of_size(c as usize) {
                out.push(JoinClass {
                    c,
                    sigma,
                    t,
                    k: join_k(sigma, c, t, kc, d),
                    r: join_r(c, t),
                    count: count.clone(),
                });
            }
        }
    }
    out
}

/// One join with its explicit index set (points numbered from 1 in the
/// normalized order).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Join {
    pub t: u32,
    pub points: Vec<usize>,
    pub k: i64,
    pub r: i64,
}

/// Joins with `k >= 1` and `r >= 1`, listed subset by subset. The number of
/// subsets examined is capped by `limit`.
pub fn special_joins(sys: &NormalizedSystem, limit: usize) -> Result<Vec<Join>> {
    let (kc, _) = curve_params(sys, "join listing")?;
    let n = sys.n();
    let s = sys.s();
    let examined: BigInt = (0..=n / 2)
        .flat_map(|t| (0..=n - 2 * t).map(move |c| crate::combin::binom(s as i64, i64::from(c))))
        .sum();
    if examined > BigInt::from(limit) {
        return Err(Error::Precondition(format!(
            "listing joins would examine {examined} subsets (limit {limit})"
        )));
    }
    let mut out = Vec::new();
    for t in 0..=n / 2 {
        for c in 0..=((n - 2 * t) as usize).min(s) {
            let mut subset: Vec<usize> = (0..c).collect();
            loop {
                let sigma: i64 = subset.iter().map(|&i| sys.mults()[i]).sum();
                let k = join_k(sigma, c as u32, t, kc, sys.d());
                let r = join_r(c as u32, t);
                if k >= 1 && r >= 1 {
                    out.push(Join {
                        t,
                        points: subset.iter().map(|i| i + 1).collect(),
                        k,
                        r,
                    });
                }
                if !next_combination(&mut subset, s) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Advances a sorted index set to the next `c`-subset of `0..s` in
/// lexicographic order.
fn next_combination(subset: &mut [usize], s: usize) -> bool {
    let c = subset.len();
    for i in (0..c).rev() {
        if subset[i] < s - c + i {
            subset[i] += 1;
            for j in i + 1..c {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binom;
    use crate::system::{normalize, LinearSystemSpec};
    use proptest::prelude::*;

    fn worked() -> NormalizedSystem {
        normalize(&LinearSystemSpec::new(5, 8, vec![7, 6, 6, 5, 5, 5, 5, 5, 5, 5]).unwrap())
    }

    fn brute_counts(mults: &[i64], c: usize) -> BTreeMap<i64, BigInt> {
        let mut out = BTreeMap::new();
        let s = mults.len();
        if c > s {
            return out;
        }
        let mut subset: Vec<usize> = (0..c).collect();
        loop {
            let sigma = subset.iter().map(|&i| mults[i]).sum();
            *out.entry(sigma).or_insert_with(BigInt::zero) += 1;
            if !next_combination(&mut subset, s) {
                return out;
            }
        }
    }

    #[test]
    fn cone_from_second_point() {
        let classes = enumerate_join_classes(&worked()).unwrap();
        let cone = classes
            .iter()
            .find(|j| (j.c, j.sigma, j.t) == (1, 6, 1))
            .unwrap();
        assert_eq!((cone.k, cone.r), (3, 2));
        assert_eq!(cone.count, BigInt::from(2));
        assert_eq!(cone.f_argument(5), 5);
    }

    #[test]
    fn ambient_class_always_present() {
        let classes = enumerate_join_classes(&worked()).unwrap();
        let ambient = &classes[0];
        assert_eq!((ambient.c, ambient.sigma, ambient.t), (0, 0, 0));
        assert_eq!((ambient.k, ambient.r), (8, -1));
        assert_eq!(ambient.count, BigInt::one());
    }

    #[test]
    fn index_ranges() {
        let classes = enumerate_join_classes(&worked()).unwrap();
        assert!(classes.iter().all(|j| j.t <= 2 && j.c + 2 * j.t <= 5));
        // t = 2 admits c = 0 and c = 1 only.
        let mut top: Vec<u32> = classes.iter().filter(|j| j.t == 2).map(|j| j.c).collect();
        top.dedup();
        assert_eq!(top, vec![0, 1]);
    }

    #[test]
    fn listing_of_worked_example() {
        let joins = special_joins(&worked(), 10_000).unwrap();
        let of = |t: u32, c: usize| -> Vec<Vec<usize>> {
            joins
                .iter()
                .filter(|j| j.t == t && j.points.len() == c)
                .map(|j| j.points.clone())
                .collect()
        };
        // Every line: k_ij = m_i + m_j - 8 >= 2.
        assert_eq!(of(0, 2).len(), 45);
        assert_eq!(of(1, 0), vec![Vec::<usize>::new()]);
        assert_eq!(of(1, 1).len(), 10);
        // 2-planes: sum of three multiplicities at least 17.
        let planes = of(0, 3);
        let expected = brute_planes(&[7, 6, 6, 5, 5, 5, 5, 5, 5, 5]);
        assert_eq!(planes, expected);
        assert_eq!(planes.len(), 43);
        assert!(planes.contains(&vec![1, 4, 5]));
        assert!(!planes.contains(&vec![2, 4, 5]));
        assert_eq!(of(2, 0), vec![Vec::<usize>::new()]);
        // J(L_ij, C) needs m_i + m_j >= 12, which includes {1, k} for k >= 4.
        let mut cones = vec![vec![1, 2], vec![1, 3]];
        cones.extend((4..=10).map(|k| vec![1, k]));
        cones.push(vec![2, 3]);
        assert_eq!(of(1, 2), cones);
        assert_eq!(of(2, 1), vec![vec![1]]);
        assert!(of(0, 4).is_empty() && of(0, 5).is_empty() && of(1, 3).is_empty());
    }

    fn brute_planes(m: &[i64]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                for k in j + 1..m.len() {
                    if m[i] + m[j] + m[k] - 16 >= 1 {
                        out.push(vec![i + 1, j + 1, k + 1]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn listing_respects_limit() {
        assert!(matches!(
            special_joins(&worked(), 10),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn needs_curve() {
        let sys = normalize(&LinearSystemSpec::new(3, 4, vec![2, 2]).unwrap());
        assert!(matches!(
            enumerate_join_classes(&sys),
            Err(Error::TooFewPoints { .. })
        ));
    }

    proptest! {
        #[test]
        fn subset_sums_match_brute_force(
            mults in proptest::collection::vec(1i64..6, 0..11),
            c_max in 0usize..6,
        ) {
            let sums = SubsetSums::new(&mults, c_max);
            for c in 0..=c_max {
                let got: BTreeMap<i64, BigInt> =
                    sums.of_size(c).map(|(s, n)| (s, n.clone())).collect();
                prop_assert_eq!(got, brute_counts(&mults, c));
            }
        }

        #[test]
        fn subset_counts_are_conserved(
            mults in proptest::collection::vec(1i64..9, 0..25),
            c_max in 0usize..8,
        ) {
            let sums = SubsetSums::new(&mults, c_max);
            for c in 0..=c_max {
                let total: BigInt = sums.of_size(c).map(|(_, n)| n.clone()).sum();
                prop_assert_eq!(total, binom(mults.len() as i64, c as i64));
            }
        }
    }
}
