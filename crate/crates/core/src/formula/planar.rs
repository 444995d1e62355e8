//! Plane curves through points of a conic: the closed form `G(D)` and the
//! reduction of `D` to a nef class that preserves it.

use num_bigint::BigInt;
use num_traits::Zero;

use super::params::{compute_epsilon, compute_kc};
use crate::combin::binom;
use crate::error::{Error, Result};
use crate::system::NormalizedSystem;

/// ```text
/// G(D) = binom(d+2,2) - sum binom(m_i+1,2) + sum_{i<j} binom(k_ij,2)
///        + binom(k_C,2) + (s-5) binom(k_C+1,2) - eps binom(k_C,1)
/// ```
/// with `k_ij = m_i + m_j - d`. Needs `s >= 5`.
pub fn g_value(d: i64, mults: &[i64]) -> Result<BigInt> {
    let kc = compute_kc(2, d, mults)?;
    let eps = compute_epsilon(2, d, mults)?;
    let s = mults.len() as i64;
    let mut g = binom(d + 2, 2);
    for (i, &mi) in mults.iter().enumerate() {
        g -= binom(mi + 1, 2);
        for &mj in &mults[i + 1..] {
            g += binom(mi + mj - d, 2);
        }
    }
    g += binom(kc, 2) + (s - 5) * binom(kc + 1, 2) - eps * binom(kc, 1);
    Ok(g)
}

/// Which fixed component a reduction step removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// The line `H - E_i - E_j` (points numbered from 1).
    Line(usize, usize),
    /// The conic `2H - sum E_i`.
    Conic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub component: Component,
    pub times: i64,
    pub d: i64,
    pub mults: Vec<i64>,
    pub g: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionEnd {
    /// The reduction reached this nef class.
    Nef { d: i64, mults: Vec<i64> },
    /// The degree or a multiplicity went negative, or a multiplicity
    /// exceeded the degree: `D` is not effective.
    NotEffective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarReduction {
    pub g: BigInt,
    pub steps: Vec<ReductionStep>,
    pub end: ReductionEnd,
}

impl PlanarReduction {
    /// `h^0(D)`: `G(D)` when `D` reduced to a nef class, 0 otherwise.
    pub fn h0(&self) -> BigInt {
        match self.end {
            ReductionEnd::Nef { .. } => self.g.clone().max(BigInt::zero()),
            ReductionEnd::NotEffective => BigInt::zero(),
        }
    }
}

fn is_nef(d: i64, mults: &[i64]) -> bool {
    let pairs_ok = mults
        .iter()
        .enumerate()
        .all(|(i, &mi)| mults[i + 1..].iter().all(|&mj| d - mi - mj >= 0));
    mults.iter().all(|&m| m >= 0) && pairs_ok && 2 * d - mults.iter().sum::<i64>() >= 0
}

fn first_positive_line(d: i64, mults: &[i64]) -> Option<(usize, usize, i64)> {
    for i in 0..mults.len() {
        for j in i + 1..mults.len() {
            let k = mults[i] + mults[j] - d;
            if k > 0 {
                return Some((i, j, k));
            }
        }
    }
    None
}

/// Subtracts `k_ij^+` copies of every line, then `k_C^+` copies of the
/// conic, checking after every step that `G` is unchanged. The input must be
/// non-redundant with `s >= 5`.
///
/// `G` is only claimed to be invariant along the reduction of an effective
/// class, so a change is reported as an inconsistency only if the reduction
/// goes on to reach a nef class.
pub fn planar_reduction(d: i64, mults: &[i64]) -> Result<PlanarReduction> {
    let g = g_value(d, mults)?;
    let mut steps = Vec::new();
    let mut d = d;
    let mut mults = mults.to_vec();
    let not_effective = |steps| PlanarReduction {
        g: g.clone(),
        steps,
        end: ReductionEnd::NotEffective,
    };

    let mut mismatch: Option<String> = None;
    let mut check = |d: i64, mults: &[i64], what: &str| -> Result<BigInt> {
        let after = g_value(d, mults)?;
        if after != g && mismatch.is_none() {
            mismatch = Some(format!(
                "G changed from {g} to {after} after removing {what} (d = {d}, m = {mults:?})"
            ));
        }
        Ok(after)
    };

    let exceeds = |d: i64, mults: &[i64]| d < 0 || mults.iter().any(|&m| m < 0 || m > d);
    if exceeds(d, &mults) {
        return Ok(not_effective(steps));
    }
    while let Some((i, j, k)) = first_positive_line(d, &mults) {
        d -= k;
        mults[i] -= k;
        mults[j] -= k;
        if exceeds(d, &mults) {
            return Ok(not_effective(steps));
        }
        let g_now = check(d, &mults, &format!("{k} x L_{{{},{}}}", i + 1, j + 1))?;
        steps.push(ReductionStep {
            component: Component::Line(i + 1, j + 1),
            times: k,
            d,
            mults: mults.clone(),
            g: g_now,
        });
    }

    let kc = compute_kc(2, d, &mults)?;
    if kc > 0 {
        d -= 2 * kc;
        mults.iter_mut().for_each(|m| *m -= kc);
        if exceeds(d, &mults) {
            return Ok(not_effective(steps));
        }
        let g_now = check(d, &mults, &format!("{kc} x C"))?;
        steps.push(ReductionStep {
            component: Component::Conic,
            times: kc,
            d,
            mults: mults.clone(),
            g: g_now,
        });
    }

    if let Some(msg) = mismatch {
        return Err(Error::PlanarInconsistency(msg));
    }
    if !is_nef(d, &mults) {
        return Err(Error::PlanarInconsistency(format!(
            "reduction ended at a class that is not nef (d = {d}, m = {mults:?})"
        )));
    }
    // On a nef class every correction term of G vanishes.
    let euler = binom(d + 2, 2) - mults.iter().map(|&m| binom(m + 1, 2)).sum::<BigInt>();
    if euler != g {
        return Err(Error::PlanarInconsistency(format!(
            "G = {g} but the Euler characteristic of the nef class is {euler}"
        )));
    }
    Ok(PlanarReduction {
        g,
        steps,
        end: ReductionEnd::Nef { d, mults },
    })
}

/// `h^0` of a non-redundant plane system with at least five points.
pub fn planar_h0(sys: &NormalizedSystem) -> Result<BigInt> {
    if sys.n() != 2 {
        return Err(Error::WrongDimension {
            op: "planar_h0",
            expected: 2,
            n: sys.n(),
        });
    }
    if sys.d() < 0 {
        return Ok(BigInt::zero());
    }
    if sys.s() < 5 {
        return Err(Error::TooFewPoints {
            op: "planar_h0",
            n: 2,
            s: sys.s(),
        });
    }
    Ok(planar_reduction(sys.d(), sys.mults())?.h0())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{normalize, LinearSystemSpec};

    fn planar(d: i64, m: &[i64]) -> BigInt {
        planar_h0(&normalize(
            &LinearSystemSpec::new(2, d, m.to_vec()).unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(planar(2, &[1; 5]), BigInt::from(1));
        assert_eq!(planar(4, &[2; 5]), BigInt::from(1));
        assert_eq!(planar(3, &[2, 1, 1, 1, 1, 1]), BigInt::from(2));
    }

    #[test]
    fn g_of_six_points() {
        assert_eq!(g_value(3, &[2, 1, 1, 1, 1, 1]), Ok(BigInt::from(2)));
    }

    #[test]
    fn double_conic_reduces_through_the_conic() {
        let red = planar_reduction(4, &[2; 5]).unwrap();
        assert_eq!(red.steps.len(), 1);
        assert_eq!(red.steps[0].component, Component::Conic);
        assert_eq!(red.steps[0].times, 2);
        assert_eq!(
            red.end,
            ReductionEnd::Nef {
                d: 0,
                mults: vec![0; 5]
            }
        );
    }

    #[test]
    fn line_steps_preserve_g() {
        // k_12 = 3, then k_C = 2.
        let red = planar_reduction(8, &[6, 5, 2, 2, 2, 2]).unwrap();
        assert_eq!(red.steps.len(), 2);
        assert_eq!(red.steps[0].component, Component::Line(1, 2));
        assert_eq!(red.steps[0].times, 3);
        assert_eq!(red.steps[1].component, Component::Conic);
        assert_eq!(red.steps[1].times, 2);
        assert!(red.steps.iter().all(|s| s.g == red.g));
    }

    #[test]
    fn not_effective_is_empty() {
        // A cubic with a triple point is three lines through it, and those
        // meet the conic in only three more points.
        assert_eq!(planar(3, &[3, 1, 1, 1, 1]), BigInt::zero());
        assert_eq!(planar(-1, &[1; 5]), BigInt::zero());
    }

    #[test]
    fn rejects_other_dimensions() {
        let sys = normalize(&LinearSystemSpec::new(3, 4, vec![1; 6]).unwrap());
        assert!(matches!(planar_h0(&sys), Err(Error::WrongDimension { .. })));
    }
}
