//! Exact row reduction over `Q(i)`.

use num_traits::{One, Zero};

use crate::exactnum::GaussianRational as Q;

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Columns are scanned left to right and the pivot in each column is the
/// first row (top-down) with a nonzero entry, so the result is fully
/// deterministic.
pub fn rref(rows: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].checked_inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}`, one vector per free column, each with a 1 in
/// its free position.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from(x)).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![row(&[1, 2, 3]), row(&[2, 4, 6])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &a {
                let dot = r.iter().zip(v).fold(Q::zero(), |acc, (x, y)| &acc + &(x * y));
                assert!(dot.is_zero());
            }
        }
        assert_eq!(ns[0], row(&[-2, 1, 0]));
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let a = vec![row(&[0, 1]), row(&[1, 0])];
        assert!(nullspace(&a, 2).is_empty());
    }
}
