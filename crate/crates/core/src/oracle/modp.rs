//! Arithmetic modulo primes just below `2^62`, and rank over `F_p`.

use rand::Rng;
use rayon::prelude::*;

/// Deterministic for every `u64` with these witnesses.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub const PRIME_BITS: u32 = 62;

/// A random prime in `[2^62 - 2^40, 2^62)`.
pub fn random_prime<R: Rng>(rng: &mut R) -> u64 {
    let top = 1u64 << PRIME_BITS;
    loop {
        let candidate = (top - rng.gen_range(1..1u64 << 40)) | 1;
        if candidate < top && is_prime(candidate) {
            return candidate;
        }
    }
}

/// Montgomery form modulo an odd `p < 2^62` with `R = 2^64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Montgomery {
    p: u64,
    /// `-p^{-1} mod 2^64`.
    neg_inv: u64,
    /// `R^2 mod p`.
    r2: u64,
}

impl Montgomery {
    pub fn new(p: u64) -> Self {
        assert!(
            p % 2 == 1 && p < 1 << PRIME_BITS,
            "modulus must be odd and below 2^62"
        );
        // Newton iteration for p^{-1} mod 2^64.
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = (u128::from(u64::MAX) + 1) % u128::from(p);
        let r2 = (r * r % u128::from(p)) as u64;
        Montgomery {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + u128::from(m) * u128::from(self.p)) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn to_mont(&self, x: u64) -> u64 {
        self.redc(u128::from(x % self.p) * u128::from(self.r2))
    }

    #[inline]
    pub fn from_mont(&self, x: u64) -> u64 {
        self.redc(u128::from(x))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(u128::from(a) * u128::from(b))
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.to_mont(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element in Montgomery form.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Rank over `F_p` of a row-major matrix whose entries are already in
/// Montgomery form. The matrix is destroyed.
pub fn rank_mod(ctx: &Montgomery, rows: usize, cols: usize, a: &mut [u64]) -> usize {
    assert_eq!(a.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| a[i * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in col..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        let inv = ctx.inv(pivot_row[col]);
        tail.par_chunks_mut(cols).for_each(|row| {
            if row[col] == 0 {
                return;
            }
            let factor = ctx.mul(row[col], inv);
            row[col] = 0;
            for j in col + 1..cols {
                if pivot_row[j] != 0 {
                    row[j] = ctx.sub(row[j], ctx.mul(factor, pivot_row[j]));
                }
            }
        });
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        // 2^61 - 1 is a Mersenne prime; 2^62 - 1 = 3 * ...
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 62) - 1));
        // Strong pseudoprime to several small bases.
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn random_primes_are_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let p = random_prime(&mut rng);
            assert!(p < 1 << 62 && p > (1 << 62) - (1 << 40));
            assert!(is_prime(p));
        }
    }

    #[test]
    fn montgomery_matches_plain_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = random_prime(&mut rng);
        let ctx = Montgomery::new(p);
        for _ in 0..1000 {
            let a = rng.gen_range(0..p);
            let b = rng.gen_range(0..p);
            let (am, bm) = (ctx.to_mont(a), ctx.to_mont(b));
            assert_eq!(ctx.from_mont(ctx.mul(am, bm)), mul_mod(a, b, p));
            assert_eq!(ctx.from_mont(ctx.sub(am, bm)), (a + p - b) % p);
            if a != 0 {
                assert_eq!(ctx.from_mont(ctx.mul(am, ctx.inv(am))), 1);
            }
        }
    }

    #[test]
    fn rank_of_small_matrices() {
        let ctx = Montgomery::new(1_000_000_007);
        let to = |v: &[u64]| v.iter().map(|&x| ctx.to_mont(x)).collect::<Vec<_>>();
        let mut m = to(&[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(rank_mod(&ctx, 3, 3, &mut m), 2);
        let mut m = to(&[0, 0, 0, 0]);
        assert_eq!(rank_mod(&ctx, 2, 2, &mut m), 0);
        let mut m = to(&[0, 1, 1, 0, 1, 1]);
        assert_eq!(rank_mod(&ctx, 3, 2, &mut m), 2);
    }
}
