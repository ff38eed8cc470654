//! Dense Gaussian elimination over a scalar backend: rank and nullspace.

use alloc::vec::Vec;


use crate::scalar::Scalar;

/// Reduced row echelon form in place; returns pivot columns.
///
/// Exact backends pivot on the first nonzero entry. Floating backends use
/// partial pivoting and treat entries at or below `tol` (relative to the largest
/// entry of the input) as zero.
pub fn rref<T: Scalar>(rows: &mut Vec<Vec<T>>, ncols: usize, tol: f64) -> Vec<usize> {
    let scale = rows.iter().flat_map(|r| r.iter()).map(Scalar::abs_f64).fold(0.0, f64::max).max(1.0);
    let negligible = |x: &T| if T::EXACT { x.is_zero() } else { x.abs_f64() <= tol * scale };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let pick = if T::EXACT {
            (r..rows.len()).find(|&i| !rows[i][c].is_zero())
        } else {
            (r..rows.len())
                .max_by(|&a, &b| rows[a][c].abs_f64().total_cmp(&rows[b][c].abs_f64()))
                .filter(|&i| !negligible(&rows[i][c]))
        };
        let Some(p) = pick else { continue };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    if !rows[r][j].is_zero() {
                        let d = f.clone() * rows[r][j].clone();
                        rows[i][j] = rows[i][j].clone() - d;
                    }
                }
                if !T::EXACT {
                    rows[i][c] = T::zero();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize, tol: f64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols, tol).len()
}

/// Basis of `{x : M x = 0}` for the matrix given by `rows`.
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], ncols: usize, tol: f64) -> Vec<Vec<T>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols, tol);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = alloc::vec![T::zero(); ncols];
            x[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Real rank of a set of vectors given as rows.
pub fn span_rank<T: Scalar>(vectors: &[Vec<T>], tol: f64) -> usize {
    let n = vectors.first().map_or(0, Vec::len);
    rank(vectors, n, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use alloc::vec;
    use num_traits::Zero;

    #[test]
    fn rank_and_kernel() {
        let r = |n: i64| Rational::from_i64(n);
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(1), r(0), r(1)]];
        assert_eq!(rank(&m, 3, 0.0), 2);
        let k = nullspace(&m, 3, 0.0);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&k[0]).fold(r(0), |a, (x, y)| a + x.clone() * y.clone());
            assert!(dot.is_zero());
        }
        let mf: Vec<Vec<f64>> = m.iter().map(|row| row.iter().map(Scalar::to_f64).collect()).collect();
        assert_eq!(rank(&mf, 3, 1e-12), 2);
    }
}
