//! Exhaustive enumeration of lattice vectors below a norm bound.
//!
//! The quadratic form is first written exactly as
//! `Q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2` over the rationals. The
//! search fixes coordinates from the last to the first, and each
//! coordinate's range follows from the budget left by the ones already
//! fixed. Interval endpoints are evaluated in `f64` with a slack far larger
//! than the rounding error, so no vector is ever missed; every leaf's norm
//! is then recomputed exactly in integers before it is counted.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::Lattice;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;

const SLACK: f64 = 1e-6;

/// Number of vectors of each norm `0..=max_norm` (index = norm).
pub fn norm_counts(l: &Lattice, max_norm: i64) -> Result<Vec<u64>> {
    if !l.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if max_norm < 0 {
        return Err(Error::OddNormBound(max_norm));
    }
    let search = Search::new(l, max_norm);
    let n = l.rank();
    let bound = max_norm as f64;

    // Fan out over the top two coordinates; the merge is a plain sum, so the
    // result does not depend on scheduling.
    let mut prefixes = Vec::new();
    let mut coords = vec![0i64; n];
    let split = n.min(2);
    search.collect_prefixes(n, n - split, bound, 0, &mut coords, &mut prefixes);

    let partials: Vec<Vec<u64>> = prefixes
        .into_par_iter()
        .map(|(tail, budget, exact)| {
            let mut counts = vec![0u64; max_norm as usize + 1];
            let mut coords = vec![0i64; n];
            coords[n - split..].copy_from_slice(&tail);
            search.descend(n - split, budget, exact, &mut coords, &mut counts);
            counts
        })
        .collect();

    let mut counts = vec![0u64; max_norm as usize + 1];
    for p in partials {
        for (c, v) in counts.iter_mut().zip(p) {
            *c += v;
        }
    }
    Ok(counts)
}

/// Counts `r(2n)` of vectors with `(v, v) = 2n` for `n = 1..=max_norm/2`.
pub fn enumerate_by_norm(l: &Lattice, max_norm: i64) -> Result<Vec<u64>> {
    if max_norm < 0 || max_norm % 2 != 0 {
        return Err(Error::OddNormBound(max_norm));
    }
    let counts = norm_counts(l, max_norm)?;
    Ok((1..=max_norm as usize / 2).map(|n| counts[2 * n]).collect())
}

/// Brute-force count over the box `|x_i| <= sqrt(max_norm * (G^-1)_ii)`.
///
/// The box provably contains every vector of norm at most `max_norm`. The
/// cost is exponential in the rank, so keep this to rank four or so.
pub fn box_search_counts(l: &Lattice, max_norm: i64) -> Result<Vec<u64>> {
    if !l.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if max_norm < 0 {
        return Err(Error::OddNormBound(max_norm));
    }
    let n = l.rank();
    let g: Vec<Vec<BigRational>> =
        l.gram().iter().map(|r| r.iter().map(|&x| BigRational::from_i128(x as i128)).collect()).collect();
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::from_i128(1);
            let col = match linalg::solve(&g, &e) {
                linalg::Solution::Unique(x) => x,
                _ => unreachable!("positive definite Gram is invertible"),
            };
            let limit = &col[i] * BigRational::from_i128(max_norm as i128);
            let mut m = 0i64;
            while BigRational::from_i128(((m + 1) * (m + 1)) as i128) <= limit {
                m += 1;
            }
            m
        })
        .collect();

    let mut counts = vec![0u64; max_norm as usize + 1];
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let q = l.norm(&x);
        if q <= max_norm {
            counts[q as usize] += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(counts);
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

struct Search<'a> {
    gram: &'a [Vec<i64>],
    diag: Vec<f64>,
    /// `mu[i][j]` for `j > i`.
    mu: Vec<Vec<f64>>,
    max_norm: i64,
}

impl<'a> Search<'a> {
    fn new(l: &'a Lattice, max_norm: i64) -> Self {
        let n = l.rank();
        let mut q: Vec<Vec<BigRational>> =
            l.gram().iter().map(|r| r.iter().map(|&x| BigRational::from_i128(x as i128)).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                let t = &q[i][j] / &q[i][i];
                q[j][i] = q[i][j].clone();
                q[i][j] = t;
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = &q[k][i] * &q[i][l];
                    q[k][l] -= t;
                }
            }
        }
        let f = |r: &BigRational| r.to_f64().expect("finite pivot");
        let diag = (0..n).map(|i| f(&q[i][i])).collect();
        let mu = (0..n).map(|i| (0..n).map(|j| if j > i { f(&q[i][j]) } else { 0.0 }).collect()).collect();
        Self { gram: l.gram(), diag, mu, max_norm }
    }

    fn range(&self, i: usize, budget: f64, coords: &[i64]) -> (i64, i64, f64) {
        let center: f64 = -(i + 1..coords.len()).map(|j| self.mu[i][j] * coords[j] as f64).sum::<f64>();
        let radius = (budget.max(0.0) / self.diag[i]).sqrt() + SLACK;
        ((center - radius).ceil() as i64, (center + radius).floor() as i64, center)
    }

    /// Exact norm contribution of coordinate `i` given coordinates above it.
    fn exact_step(&self, i: usize, coords: &[i64]) -> i64 {
        let x = coords[i];
        let cross: i64 = (i + 1..coords.len()).map(|j| self.gram[i][j] * coords[j]).sum();
        self.gram[i][i] * x * x + 2 * x * cross
    }

    fn collect_prefixes(
        &self,
        level: usize,
        stop: usize,
        budget: f64,
        exact: i64,
        coords: &mut [i64],
        out: &mut Vec<(Vec<i64>, f64, i64)>,
    ) {
        if level == stop {
            out.push((coords[stop..].to_vec(), budget, exact));
            return;
        }
        let i = level - 1;
        let (lo, hi, center) = self.range(i, budget, coords);
        for x in lo..=hi {
            coords[i] = x;
            let d = x as f64 - center;
            let rest = budget - self.diag[i] * d * d;
            if rest < -SLACK {
                continue;
            }
            let e = exact + self.exact_step(i, coords);
            self.collect_prefixes(level - 1, stop, rest, e, coords, out);
        }
        coords[i] = 0;
    }

    fn descend(&self, level: usize, budget: f64, exact: i64, coords: &mut [i64], counts: &mut [u64]) {
        if level == 0 {
            if exact <= self.max_norm {
                counts[exact as usize] += 1;
            }
            return;
        }
        let i = level - 1;
        let (lo, hi, center) = self.range(i, budget, coords);
        for x in lo..=hi {
            coords[i] = x;
            let d = x as f64 - center;
            let rest = budget - self.diag[i] * d * d;
            if rest < -SLACK {
                continue;
            }
            let e = exact + self.exact_step(i, coords);
            self.descend(i, rest, e, coords, counts);
        }
        coords[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named_lattice;

    #[test]
    fn rank_one() {
        let a1 = named_lattice("A1").unwrap();
        let r = enumerate_by_norm(&a1, 18).unwrap();
        assert_eq!(r[0], 2); // norm 2
        assert_eq!(r[3], 2); // norm 8
        assert_eq!(r[8], 2); // norm 18
        assert_eq!(r.iter().sum::<u64>(), 6);
    }

    #[test]
    fn agrees_with_box_search_small_rank() {
        let grams = [
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![vec![3, 1, 0, 1], vec![1, 4, 1, 0], vec![0, 1, 5, 2], vec![1, 0, 2, 6]],
            vec![vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 2]],
        ];
        for g in grams {
            let l = Lattice::from_gram(g).unwrap();
            assert_eq!(norm_counts(&l, 14).unwrap(), box_search_counts(&l, 14).unwrap());
        }
    }

    #[test]
    fn e8_roots() {
        let e8 = named_lattice("E8").unwrap();
        assert_eq!(enumerate_by_norm(&e8, 2).unwrap(), vec![240]);
        let odd: u64 = norm_counts(&e8, 6).unwrap().iter().skip(1).step_by(2).sum();
        assert_eq!(odd, 0);
    }

    #[test]
    fn rejects_bad_input() {
        let u = named_lattice("U").unwrap();
        assert_eq!(norm_counts(&u, 4), Err(Error::NotPositiveDefinite));
        let a1 = named_lattice("A1").unwrap();
        assert_eq!(enumerate_by_norm(&a1, 3), Err(Error::OddNormBound(3)));
        assert_eq!(norm_counts(&a1, 0).unwrap(), vec![1]);
    }
}
