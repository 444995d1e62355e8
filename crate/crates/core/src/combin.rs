//! Binomial coefficients with the truncating convention and the recursive
//! contribution function `F_t(a, s, eps, n)`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use parking_lot::RwLock;

pub mod identities;

/// `binom(a, k)` under the convention `binom(a, k) = 0` for `a < k` (any
/// sign of `a`) and for `k < 0`, and `binom(b, 0) = 1` for `b >= 0`.
pub fn binom(a: i64, k: i64) -> BigInt {
    if k < 0 || a < k {
        return BigInt::zero();
    }
    let k = k.min(a - k) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    // acc = binom(a - k + i, i) after step i; each division is exact.
    for i in 1..=k {
        acc *= a - k + i;
        acc /= i;
    }
    BigInt::from(acc)
}

/// Memo key of `F_t(a, s, eps, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FKey {
    pub t: u32,
    pub a: i64,
    pub s: i64,
    pub eps: i64,
    pub n: i64,
}

impl FKey {
    pub fn new(t: u32, a: i64, s: i64, eps: i64, n: i64) -> Self {
        FKey { t, a, s, eps, n }
    }
}

/// Memo table for `F_t`. Lookups are safe from several threads: a value may
/// be computed twice by racing threads but only the first insert is kept,
/// and both computations agree anyway.
#[derive(Debug, Default)]
pub struct FTable {
    memo: RwLock<HashMap<FKey, BigInt>>,
}

impl FTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.memo.write().clear();
    }

    /// ```text
    /// F_0(a,s,e,n) = binom(a,n)
    /// F_t(a,s,e,n) = binom(a,n) + sum_{i=1..t} binom(s-n-4+i, i) binom(a+i, n)
    ///                           - sum_{i=1..t} binom(e, i) F_{t-i}(a,s,e,n-i)
    /// ```
    /// with `F = 0` whenever `n < 0`.
    pub fn get(&self, key: FKey) -> BigInt {
        if key.n < 0 {
            return BigInt::zero();
        }
        if key.t == 0 {
            return binom(key.a, key.n);
        }
        if let Some(v) = self.memo.read().get(&key) {
            return v.clone();
        }
        let FKey { t, a, s, eps, n } = key;
        let mut value = binom(a, n);
        for i in 1..=t {
            let i64_i = i64::from(i);
            let secants = binom(s - n - 4 + i64_i, i64_i);
            if !secants.is_zero() {
                value += secants * binom(a + i64_i, n);
            }
            let excess = binom(eps, i64_i);
            if !excess.is_zero() {
                value -= excess * self.get(FKey::new(t - i, a, s, eps, n - i64_i));
            }
        }
        self.memo.write().entry(key).or_insert(value).clone()
    }
}

fn global() -> &'static FTable {
    static TABLE: OnceLock<FTable> = OnceLock::new();
    TABLE.get_or_init(FTable::new)
}

/// `F_t(a, s, eps, n)` through the process-wide memo table.
pub fn f(key: FKey) -> BigInt {
    global().get(key)
}

/// Shorthand for `f(FKey::new(t, a, s, eps, n))`.
pub fn f_t(t: u32, a: i64, s: i64, eps: i64, n: i64) -> BigInt {
    f(FKey::new(t, a, s, eps, n))
}
