//! Fraction-free elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

/// Rank of an integer matrix given as rows. Every intermediate entry is a
/// minor of the input, so each division below is exact.
pub fn rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let p = &pivot_row[col];
        tail.par_iter_mut().for_each(|row| {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let mut v = p * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact division in elimination");
                row[j] = q;
            }
        });
        prev = p.clone();
        rank += 1;
    }
    rank
}
