//! `k_C`, the exceeding number and the join parameters `k`, `r`.

use crate::error::{Error, Result};

/// Ceiling division for a positive divisor, exact for negative numerators.
pub(crate) fn ceil_div(num: i64, den: i64) -> i64 {
    debug_assert!(den > 0);
    -(-num).div_euclid(den)
}

fn check_curve_domain(op: &'static str, n: u32, s: usize) -> Result<()> {
    if (s as i64) < i64::from(n) + 3 {
        return Err(Error::TooFewPoints { op, n, s });
    }
    Ok(())
}

/// `k_C = ceil((sum m_i - n d) / (s - n - 2))`, the multiplicity with which
/// the rational normal curve through the points lies in the base locus.
pub fn compute_kc(n: u32, d: i64, mults: &[i64]) -> Result<i64> {
    check_curve_domain("k_C", n, mults.len())?;
    let n = i64::from(n);
    let excess: i64 = mults.iter().sum::<i64>() - n * d;
    Ok(ceil_div(excess, mults.len() as i64 - n - 2))
}

/// The exceeding number: the unique `eps` in `0..=s-n-3` with
/// `k_C (s - n - 2) = sum m_i - n d + eps`.
pub fn compute_epsilon(n: u32, d: i64, mults: &[i64]) -> Result<i64> {
    let kc = compute_kc(n, d, mults)?;
    let s = mults.len() as i64;
    let n = i64::from(n);
    let eps = kc * (s - n - 2) - (mults.iter().sum::<i64>() - n * d);
    assert!(
        (0..=s - n - 3).contains(&eps),
        "exceeding number {eps} outside 0..={}",
        s - n - 3
    );
    Ok(eps)
}

/// `k_{I, sigma_t} = sum_{i in I} m_i + t k_C - (t + |I| - 1) d`.
pub fn join_k(sigma: i64, c: u32, t: u32, kc: i64, d: i64) -> i64 {
    let (c, t) = (i64::from(c), i64::from(t));
    sigma + t * kc - (t + c - 1) * d
}

/// `r_{I, sigma_t} = |I| + 2t - 1`, the dimension of `J(L_I, sigma_t)`.
pub fn join_r(c: u32, t: u32) -> i64 {
    i64::from(c) + 2 * i64::from(t) - 1
}
