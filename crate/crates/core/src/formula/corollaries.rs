//! Non-speciality threshold and the double-point speciality formula.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combin::f_t;
use crate::error::{Error, Result};

/// `max(m_1 + m_2 - 1, floor((sum m_i + n - 2) / n))`: the least degree from
/// which `L_{n,d}(m)` is non-special.
pub fn regularity_index(n: u32, mults: &[i64]) -> Result<i64> {
    let s = mults.len();
    if (s as i64) < i64::from(n) + 3 {
        return Err(Error::TooFewPoints {
            op: "regularity_index",
            n,
            s,
        });
    }
    if mults.iter().any(|&m| m < 1) {
        return Err(Error::Precondition(
            "regularity index needs positive multiplicities".into(),
        ));
    }
    let mut sorted = mults.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let n = i64::from(n);
    let lines = sorted[0] + sorted[1] - 1;
    let curve = (sorted.iter().sum::<i64>() + n - 2).div_euclid(n);
    Ok(lines.max(curve))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoublePointRegime {
    /// `n d >= 2s - 1`.
    NonSpecial,
    /// `s + n + 2 <= n d < 2s - 1`.
    Middle,
    /// `n d < s + n + 2`.
    Low,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublePoints {
    pub regime: DoublePointRegime,
    pub h1: BigInt,
    /// The same number written as a single `F_1` value. `None` when that
    /// expression would need a negative exceeding number.
    pub via_f1: Option<BigInt>,
}

/// Speciality of `L_{n,d}(2^s)`, `s >= n + 3`, assuming the system is
/// effective.
pub fn double_points_h1(n: u32, d: i64, s: usize) -> Result<DoublePoints> {
    if (s as i64) < i64::from(n) + 3 {
        return Err(Error::TooFewPoints {
            op: "double_points_h1",
            n,
            s,
        });
    }
    let (n, s) = (i64::from(n), s as i64);
    let nd = n * d;
    let (regime, h1, f1) = if nd >= 2 * s - 1 {
        (DoublePointRegime::NonSpecial, 0, None)
    } else if nd >= s + n + 2 {
        (
            DoublePointRegime::Middle,
            2 * s - nd - 1,
            Some((n - 1, nd - n - s - 2)),
        )
    } else {
        (
            DoublePointRegime::Low,
            s * (n + 1) - n * n * (d - 1) - 2,
            Some((n, n * (d - 2) - 4)),
        )
    };
    let via_f1 = match f1 {
        None => Some(BigInt::zero()),
        Some((a, eps)) if eps >= 0 => Some(f_t(1, a, s, eps, n)),
        Some(_) => None,
    };
    Ok(DoublePoints {
        regime,
        h1: BigInt::from(h1),
        via_f1,
    })
}
