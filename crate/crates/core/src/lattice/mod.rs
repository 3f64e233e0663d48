//! Integral lattices, short-vector enumeration, theta series and root systems.
//!
//! Sign convention: the lattices that appear as negative definite in the
//! K3 setting, `(-E8)^2` and the Noether-Lefschetz condition `(v,v) = -2n`,
//! are stored positive definite. NL index `n` corresponds to norm `2n`
//! (see [`nl_index_to_norm`]). [`Lattice::sign_flipped`] marks the lattices
//! stored this way.

mod enumerate;
mod roots;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::scalar::Scalar;

pub use enumerate::{box_search_counts, enumerate_by_norm, norm_counts};
pub use roots::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

/// Integral lattice given by a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    name: Option<String>,
    signature: (usize, usize),
    definiteness: Definiteness,
    sign_flipped: bool,
}

impl Lattice {
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidGram("rank must be positive".into()));
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGram("matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidGram(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        let (pos, neg, zero) = inertia(&gram);
        let definiteness = match (pos, neg, zero) {
            (_, _, z) if z > 0 => Definiteness::Degenerate,
            (_, 0, _) => Definiteness::Positive,
            (0, _, _) => Definiteness::Negative,
            _ => Definiteness::Indefinite,
        };
        Ok(Self { gram, name: None, signature: (pos, neg), definiteness, sign_flipped: false })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn definiteness(&self) -> Definiteness {
        self.definiteness
    }

    /// `(positive, negative)` inertia.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// The lattice natively carries the opposite sign of the stored Gram.
    pub fn sign_flipped(&self) -> bool {
        self.sign_flipped
    }

    pub fn is_positive_definite(&self) -> bool {
        self.definiteness == Definiteness::Positive
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    /// Exact determinant (fraction-free elimination).
    pub fn determinant(&self) -> BigInt {
        bareiss_det(&self.gram)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// `(v, v)` for integer coordinates `v`.
    pub fn norm(&self, v: &[i64]) -> i64 {
        assert_eq!(v.len(), self.rank());
        let mut s = 0i64;
        for (i, row) in self.gram.iter().enumerate() {
            let inner: i64 = row.iter().zip(v).map(|(g, x)| g * x).sum();
            s += v[i] * inner;
        }
        s
    }

    pub fn negated(&self) -> Self {
        let gram = self.gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let mut out = Self::from_gram(gram).expect("negation preserves validity");
        out.name = self.name.as_ref().map(|n| format!("-{n}"));
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            gram[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        Self::from_gram(gram).expect("direct sum of valid Grams")
    }

    /// Gram matrix in the basis given by the columns of `basis`, i.e. `B^T G B`.
    pub fn change_basis(&self, basis: &[Vec<i64>]) -> Result<Self> {
        let n = self.rank();
        if basis.len() != n || basis.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGram("basis change must be square of the lattice rank".into()));
        }
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for k in 0..n {
                    for l in 0..n {
                        s += basis[k][i] * self.gram[k][l] * basis[l][j];
                    }
                }
                gram[i][j] = s;
            }
        }
        let mut out = Self::from_gram(gram)?;
        out.name = self.name.clone();
        out.sign_flipped = self.sign_flipped;
        Ok(out)
    }
}

/// Lattices the pipeline refers to by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedLattice {
    U,
    E8,
    E8xE8,
    D16Plus,
    A1,
    II2_18,
}

impl NamedLattice {
    pub const ALL: [NamedLattice; 6] = [Self::U, Self::E8, Self::E8xE8, Self::D16Plus, Self::A1, Self::II2_18];

    pub fn tag(&self) -> &'static str {
        match self {
            Self::U => "U",
            Self::E8 => "E8",
            Self::E8xE8 => "E8xE8",
            Self::D16Plus => "D16plus",
            Self::A1 => "A1",
            Self::II2_18 => "II_2_18",
        }
    }

    pub fn lattice(&self) -> Lattice {
        let l = match self {
            Self::U => Lattice::from_gram(vec![vec![-2, 1], vec![1, 0]]),
            Self::E8 => Lattice::from_gram(roots::cartan_e(8)),
            Self::E8xE8 => {
                let e8 = Self::E8.lattice();
                let mut l = e8.direct_sum(&e8);
                l.sign_flipped = true;
                Ok(l)
            }
            Self::D16Plus => Lattice::from_gram(d16_plus_gram()).map(|mut l| {
                l.sign_flipped = true;
                l
            }),
            Self::A1 => Lattice::from_gram(vec![vec![2]]),
            Self::II2_18 => {
                let u = Self::U.lattice();
                let neg_e8 = Self::E8.lattice().negated();
                Ok(u.direct_sum(&u).direct_sum(&neg_e8).direct_sum(&neg_e8))
            }
        };
        l.expect("named Gram matrices are valid").with_name(self.tag())
    }
}

impl FromStr for NamedLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['-', '+'], "_");
        let found = match key.as_str() {
            "u" => Self::U,
            "e8" => Self::E8,
            "e8xe8" | "e8_e8" | "e8^2" => Self::E8xE8,
            "d16plus" | "d16_" => Self::D16Plus,
            "a1" => Self::A1,
            "ii_2_18" | "ii2_18" => Self::II2_18,
            _ => return Err(Error::UnknownLattice(s.to_string())),
        };
        Ok(found)
    }
}

impl fmt::Display for NamedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn named_lattice(name: &str) -> Result<Lattice> {
    Ok(name.parse::<NamedLattice>()?.lattice())
}

/// `D16^+` in the basis `e2-e3, ..., e15-e16, e15+e16, (1/2)(e1+...+e16)`.
fn d16_plus_gram() -> Vec<Vec<i64>> {
    let n = 16;
    let mut rows: Vec<Vec<i64>> = Vec::new(); // doubled coordinates
    for i in 1..15 {
        let mut v = vec![0; n];
        v[i] = 2;
        v[i + 1] = -2;
        rows.push(v);
    }
    let mut v = vec![0; n];
    v[14] = 2;
    v[15] = 2;
    rows.push(v);
    rows.push(vec![1; n]);
    rows.iter()
        .map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>() / 4).collect())
        .collect()
}

fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Inertia `(positive, negative, zero)` by congruence diagonalization over Q.
fn inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_i128(x as i128)).collect()).collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(p) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // x_k -> x_k + x_p makes the pivot 2 a_kp.
                for j in 0..n {
                    let t = a[p][j].clone();
                    a[k][j] += t;
                }
                for i in 0..n {
                    let t = a[i][p].clone();
                    a[i][k] += t;
                }
            } else {
                zero += 1;
                k += 1;
                continue;
            }
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
        for i in k + 1..n {
            a[k][i] = BigRational::zero();
            a[i][k] = BigRational::zero();
        }
        k += 1;
    }
    (pos, neg, zero)
}

/// `sum_v q^{(v,v)/2} = 1 + sum r(2n) q^n` for an even positive-definite lattice.
pub fn theta_series<T: Scalar>(l: &Lattice, prec: usize) -> Result<QSeries<T>> {
    let counts = even_counts(l, prec)?;
    Ok(QSeries::from_fn(prec, |n| T::from_i128(counts[n] as i128)))
}

/// `sum_v (v,v) q^{(v,v)/2} = sum 2n r(2n) q^n`.
///
/// This is `2 q d/dq` of the theta series; the factor 2 is kept here rather
/// than folded into a constant.
pub fn weighted_theta<T: Scalar>(l: &Lattice, prec: usize) -> Result<QSeries<T>> {
    let counts = even_counts(l, prec)?;
    Ok(QSeries::from_fn(prec, |n| T::from_i128(2 * n as i128 * counts[n] as i128)))
}

fn even_counts(l: &Lattice, prec: usize) -> Result<Vec<u64>> {
    if prec == 0 {
        return Err(Error::ZeroPrecision);
    }
    if !l.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let max_norm = 2 * (prec as i64 - 1);
    let mut counts = vec![1u64];
    counts.extend(enumerate_by_norm(l, max_norm)?);
    Ok(counts)
}

pub fn nl_index_to_norm(n: i64) -> i64 {
    2 * n
}

/// Curve class `l + n f` in the threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub ell: i64,
    pub fiber: i64,
}

/// Primitive part of a special class on an elliptic K3 and the NL divisor it lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionProjection {
    /// Self-intersection in the native (negative) convention.
    pub norm: i64,
    pub nl_index: i64,
    pub curve_class: Option<CurveClass>,
}

/// Projects a section curve `sigma` (with `sigma^2 = -2`, `sigma.f = 1`,
/// `sigma.z = d`) orthogonally off the hyperbolic plane `<z, f>`.
pub fn section_projection_norm(d: i64) -> Result<SectionProjection> {
    if d < 0 {
        return Err(Error::Parse(format!("section degree sigma.z = {d} must be nonnegative")));
    }
    let u = NamedLattice::U.lattice();
    let g: Vec<Vec<BigRational>> =
        u.gram().iter().map(|r| r.iter().map(|&x| BigRational::from_i128(x as i128)).collect()).collect();
    // Solve G c = (sigma.z, sigma.f) for the U-component c of sigma.
    let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
    let rhs = [BigRational::from_i128(d as i128), BigRational::one()];
    let c0 = (&g[1][1] * &rhs[0] - &g[0][1] * &rhs[1]) / &det;
    let c1 = (&g[0][0] * &rhs[1] - &g[1][0] * &rhs[0]) / &det;
    let u_part_sq = &c0 * &rhs[0] + &c1 * &rhs[1];
    let sigma_sq = BigRational::from_i128(-2);
    let prim = sigma_sq - u_part_sq;
    let norm = prim.to_bigint().and_then(|v| i64::try_from(v).ok()).expect("integral projection");
    let nl_index = -norm / 2;
    Ok(SectionProjection { norm, nl_index, curve_class: Some(CurveClass { ell: 1, fiber: nl_index }) })
}

/// Exceptional class of an `A1` singularity: norm `-2`, NL index 1.
pub fn a1_exceptional() -> SectionProjection {
    SectionProjection { norm: -2, nl_index: 1, curve_class: None }
}
