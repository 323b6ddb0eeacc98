//! Exact Gaussian elimination over a finite field.

use crate::coeffring::{CoeffRing, Elem};

/// Rank of the `rows x cols` row-major matrix, which is reduced in place.
///
/// Pivots are taken from the first row with a nonzero entry in the current
/// column. `field` must be a field.
pub fn rank_in_place(field: &CoeffRing, m: &mut [Elem], rows: usize, cols: usize) -> usize {
    debug_assert!(field.is_field());
    debug_assert_eq!(m.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in col..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = field
            .inv(m[rank * cols + col])
            .expect("nonzero field element is invertible");
        for c in col..cols {
            m[rank * cols + c] = field.mul(m[rank * cols + c], inv);
        }
        for r in rank + 1..rows {
            let factor = m[r * cols + col];
            if factor.is_zero() {
                continue;
            }
            let neg = field.neg(factor);
            for c in col..cols {
                m[r * cols + c] = field.mul_add(m[r * cols + c], neg, m[rank * cols + c]);
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(field: &CoeffRing, m: &[Elem], rows: usize, cols: usize) -> usize {
    let mut work = m.to_vec();
    rank_in_place(field, &mut work, rows, cols)
}
