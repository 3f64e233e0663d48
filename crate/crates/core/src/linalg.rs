//! Exact Gaussian elimination over a [`Scalar`] field.

use crate::scalar::Scalar;

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<T> {
    Unique(Vec<T>),
    /// Row `row` of the reduced system reads `0 = nonzero`.
    Inconsistent { row: usize },
    /// Consistent but with free variables.
    Underdetermined,
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref<T: Scalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = f.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(a: &[Vec<T>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Solution<T> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if let Some(row) = pivots.iter().position(|&c| c == n) {
        return Solution::Inconsistent { row };
    }
    if pivots.len() < n {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..n).map(|i| m[i][n].clone()).collect())
}

/// Basis of `{x : A x = 0}`.
pub fn null_space<T: Scalar>(a: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn solve_unique_and_overdetermined() {
        let a = mat(&[&[1, 1], &[1, -1], &[2, 0]]);
        assert_eq!(solve(&a, &[q(3), q(1), q(4)]), Solution::Unique(vec![q(2), q(1)]));
        assert!(matches!(solve(&a, &[q(3), q(1), q(5)]), Solution::Inconsistent { .. }));
        let b = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&b, &[q(1), q(2)]), Solution::Underdetermined);
    }

    #[test]
    fn kernel() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = null_space(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let dot = row.iter().zip(v).fold(q(0), |s, (x, y)| s + x * y);
                assert_eq!(dot, q(0));
            }
        }
        assert_eq!(rank(&a), 1);
    }
}
