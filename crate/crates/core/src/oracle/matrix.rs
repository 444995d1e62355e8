//! The matrix of vanishing conditions for fat points on the curve
//! `t -> (t, t^2, ..., t^n)` in the affine chart `x_0 = 1`.
//!
//! Columns are the monomials `x^beta`, `|beta| <= d`. For a point `p` of
//! multiplicity `m`, there is one row per `alpha` with `|alpha| < m`: the
//! coefficient of `y^alpha` in `(p + y)^beta`, that is
//! `prod_j binom(beta_j, alpha_j) p_j^(beta_j - alpha_j)`. These are the
//! Taylor coefficients of `x^beta` at `p`, so vanishing of all of them is
//! vanishing to order `m` without any factorials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modp::Montgomery;

/// Exponent vectors in `n` variables of total degree at most `d`, ordered by
/// degree and then lexicographically.
pub fn monomials(n: usize, d: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut current = vec![0u32; n];
    for total in 0..=d as u32 {
        fill(&mut current, 0, total, &mut out);
    }
    out
}

fn fill(current: &mut [u32], pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = left;
        out.push(current.to_vec());
        return;
    }
    for e in (0..=left).rev() {
        current[pos] = e;
        fill(current, pos + 1, left - e, out);
    }
    current[pos] = 0;
}

/// Weighted degree `sum_j j * gamma_j` (coordinates numbered from 1): the
/// power of `t` in `p^gamma`.
fn weight(gamma: &[u32]) -> u64 {
    gamma
        .iter()
        .enumerate()
        .map(|(j, &g)| (j as u64 + 1) * u64::from(g))
        .sum()
}

/// Shape and sparsity pattern of a conditions matrix, before any point
/// parameter is substituted.
#[derive(Debug, Clone)]
pub struct ConditionsLayout {
    pub n: usize,
    pub columns: Vec<Vec<u32>>,
    /// Per point: the derivative multi-indices of its rows.
    pub conditions: Vec<Vec<Vec<u32>>>,
}

impl ConditionsLayout {
    pub fn new(n: u32, d: i64, mults: &[i64]) -> Self {
        let n = n as usize;
        let columns = monomials(n, d);
        let conditions = mults.iter().map(|&m| monomials(n, m.max(0) - 1)).collect();
        ConditionsLayout {
            n,
            columns,
            conditions,
        }
    }

    pub fn rows(&self) -> usize {
        self.conditions.iter().map(Vec::len).sum()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    fn max_degree(&self) -> u32 {
        self.columns.last().map_or(0, |c| c.iter().sum())
    }

    /// Calls `emit(row, col, point, alpha, power)` for every entry that is
    /// not identically zero; the entry is `t_point^power` times a product of
    /// binomials in `alpha` and the column's exponents.
    fn for_each_entry(&self, mut emit: impl FnMut(usize, usize, usize, &[u32], u64)) {
        let mut row = 0;
        for (point, alphas) in self.conditions.iter().enumerate() {
            for alpha in alphas {
                let w_alpha = weight(alpha);
                for (col, beta) in self.columns.iter().enumerate() {
                    if alpha.iter().zip(beta).all(|(a, b)| a <= b) {
                        emit(row, col, point, alpha, weight(beta) - w_alpha);
                    }
                }
                row += 1;
            }
        }
    }

    /// Exact integer rows at curve parameters `params`.
    pub fn exact_rows(&self, params: &[i64]) -> Vec<Vec<BigInt>> {
        assert_eq!(params.len(), self.conditions.len());
        let pascal = pascal_big(self.max_degree() as usize);
        let max_power = self.n as u64 * u64::from(self.max_degree());
        let powers: Vec<Vec<BigInt>> = params
            .iter()
            .map(|&t| power_table(BigInt::from(t), max_power as usize))
            .collect();
        let mut rows = vec![vec![BigInt::zero(); self.cols()]; self.rows()];
        self.for_each_entry(|row, col, point, alpha, power| {
            let beta = &self.columns[col];
            let mut v = powers[point][power as usize].clone();
            for (a, b) in alpha.iter().zip(beta) {
                if *a > 0 {
                    v *= &pascal[*b as usize][*a as usize];
                }
            }
            rows[row][col] = v;
        });
        rows
    }

    /// Row-major entries in Montgomery form modulo `ctx`'s prime.
    pub fn modular_entries(&self, params: &[i64], ctx: &Montgomery) -> Vec<u64> {
        assert_eq!(params.len(), self.conditions.len());
        let p = ctx.modulus();
        let pascal: Vec<Vec<u64>> = pascal_mod(self.max_degree() as usize, p)
            .into_iter()
            .map(|row| row.into_iter().map(|v| ctx.to_mont(v)).collect())
            .collect();
        let max_power = self.n * self.max_degree() as usize;
        let powers: Vec<Vec<u64>> = params
            .iter()
            .map(|&t| {
                let t = ctx.to_mont(t.rem_euclid(p as i64) as u64);
                let mut table = Vec::with_capacity(max_power + 1);
                table.push(ctx.to_mont(1));
                for e in 1..=max_power {
                    table.push(ctx.mul(table[e - 1], t));
                }
                table
            })
            .collect();
        let cols = self.cols();
        let mut out = vec![0u64; self.rows() * cols];
        self.for_each_entry(|row, col, point, alpha, power| {
            let beta = &self.columns[col];
            let mut v = powers[point][power as usize];
            for (a, b) in alpha.iter().zip(beta) {
                if *a > 0 {
                    v = ctx.mul(v, pascal[*b as usize][*a as usize]);
                }
            }
            out[row * cols + col] = v;
        });
        out
    }
}

fn power_table(t: BigInt, max: usize) -> Vec<BigInt> {
    let mut table = Vec::with_capacity(max + 1);
    table.push(BigInt::one());
    for e in 1..=max {
        let next = &table[e - 1] * &t;
        table.push(next);
    }
    table
}

fn pascal_big(max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max + 1);
    for a in 0..=max {
        let mut row = vec![BigInt::one(); a + 1];
        for k in 1..a {
            row[k] = &rows[a - 1][k - 1] + &rows[a - 1][k];
        }
        rows.push(row);
    }
    rows
}

fn pascal_mod(max: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max + 1);
    for a in 0..=max {
        let mut row = vec![1u64; a + 1];
        for k in 1..a {
            row[k] = (rows[a - 1][k - 1] + rows[a - 1][k]) % p;
        }
        rows.push(row);
    }
    rows
}
