//! Truncated power series in `q` with exact coefficients.
//!
//! A [`QSeries`] is known modulo `q^prec`. Binary operations return a
//! result at the smaller of the two precisions; nothing ever pads a series
//! with zeros to claim more precision than it has.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{int, parse_rational, Scalar};

/// Power series `sum coeffs[n] q^n + O(q^prec)` with `prec = coeffs.len() >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> QSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroPrecision);
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Series whose `n`-th coefficient is `f(n)`.
    ///
    /// Panics if `prec` is zero.
    pub fn from_fn(prec: usize, f: impl FnMut(usize) -> T) -> Self {
        assert!(prec > 0, "series precision must be at least 1");
        Self { coeffs: (0..prec).map(f).collect() }
    }

    /// Panics if `prec` is zero.
    pub fn zero(prec: usize) -> Self {
        Self::from_fn(prec, |_| T::zero())
    }

    /// Panics if `prec` is zero.
    pub fn one(prec: usize) -> Self {
        Self::constant(T::one(), prec)
    }

    /// Panics if `prec` is zero.
    pub fn constant(c: T, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = c;
        s
    }

    /// `c q^k` modulo `q^prec` (just zero if `k >= prec`). Panics if `prec` is zero.
    pub fn monomial(c: T, k: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if k < prec {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: usize) -> Result<&T> {
        self.coeffs.get(n).ok_or(Error::PrecisionExceeded { index: n, prec: self.prec() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drops coefficients at and above `q^prec`. A larger `prec` is a no-op.
    pub fn truncate(&self, prec: usize) -> Self {
        let prec = prec.clamp(1, self.prec());
        Self { coeffs: self.coeffs[..prec].to_vec() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = T::one() / a0.clone();
        let mut out: Vec<T> = Vec::with_capacity(self.prec());
        out.push(inv0.clone());
        for n in 1..self.prec() {
            let mut acc = T::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// The operator `q d/dq`: coefficient `n` becomes `n * coeffs[n]`.
    pub fn q_derive(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.clone() * int(n as i64))
                .collect(),
        }
    }

    /// Index of the first coefficient where `self` and `other` differ,
    /// compared up to the shared precision.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    /// Coefficient-wise equality up to the shared precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

/// `sum c_i s_i` at the minimum precision among the terms.
pub fn linear_combine<T: Scalar>(terms: &[(T, &QSeries<T>)]) -> Result<QSeries<T>> {
    let prec = terms.iter().map(|(_, s)| s.prec()).min().ok_or(Error::EmptyCombination)?;
    let mut out: QSeries<T> = QSeries::zero(prec);
    for (c, s) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, a) in out.coeffs.iter_mut().zip(&s.coeffs) {
            *o = o.clone() + c.clone() * a.clone();
        }
    }
    Ok(out)
}

/// Truncated Cauchy product.
pub fn mul<T: Scalar>(a: &QSeries<T>, b: &QSeries<T>) -> QSeries<T> {
    let prec = a.prec().min(b.prec());
    let mut out = vec![T::zero(); prec];
    for (i, ai) in a.coeffs[..prec].iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs[..prec - i].iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
            }
        }
    }
    QSeries { coeffs: out }
}

/// `q^prefactor * prod_{n >= 1} (1 - q^n)^{a_n}` modulo `q^prec`, with
/// `a_n = exponent(n)`.
///
/// Each factor is applied in place: a positive exponent multiplies by
/// `(1 - q^n)` that many times, a negative one divides (a running prefix sum
/// with stride `n`). Everything stays integral.
pub fn product_expand<T: Scalar>(
    exponent: impl Fn(usize) -> i64,
    prefactor_power: i64,
    prec: usize,
) -> Result<QSeries<T>> {
    if prec == 0 {
        return Err(Error::ZeroPrecision);
    }
    if prefactor_power < 0 {
        return Err(Error::NegativePrefactor(prefactor_power));
    }
    let shift = prefactor_power as usize;
    let mut out = QSeries::zero(prec);
    if shift >= prec {
        return Ok(out);
    }
    let len = prec - shift;
    let mut c: Vec<T> = vec![T::zero(); len];
    c[0] = T::one();
    for n in 1..len {
        let a = exponent(n);
        if a > 0 {
            for _ in 0..a {
                for i in (n..len).rev() {
                    let t = c[i - n].clone();
                    c[i] = c[i].clone() - t;
                }
            }
        } else {
            for _ in 0..(-a) {
                for i in n..len {
                    let t = c[i - n].clone();
                    c[i] = c[i].clone() + t;
                }
            }
        }
    }
    for (i, v) in c.into_iter().enumerate() {
        out.coeffs[i + shift] = v;
    }
    Ok(out)
}

impl<T: Scalar> Add for &QSeries<T> {
    type Output = QSeries<T>;

    fn add(self, rhs: Self) -> QSeries<T> {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        QSeries { coeffs }
    }
}

impl<T: Scalar> Sub for &QSeries<T> {
    type Output = QSeries<T>;

    fn sub(self, rhs: Self) -> QSeries<T> {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        QSeries { coeffs }
    }
}

impl<T: Scalar> Mul for &QSeries<T> {
    type Output = QSeries<T>;

    fn mul(self, rhs: Self) -> QSeries<T> {
        mul(self, rhs)
    }
}

impl<T: Scalar> Neg for &QSeries<T> {
    type Output = QSeries<T>;

    fn neg(self) -> QSeries<T> {
        QSeries { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

impl<T: Scalar> fmt::Display for QSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{n}")?,
            }
            wrote = true;
        }
        if wrote {
            f.write_str(" + ")?;
        }
        write!(f, "O(q^{})", self.prec())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    prec: usize,
    coeffs: Vec<String>,
}

impl<T: Scalar> Serialize for QSeries<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr { prec: self.prec(), coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for QSeries<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.prec {
            return Err(D::Error::custom(format!(
                "prec is {} but {} coefficients given",
                repr.prec,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`"))))
            .collect::<std::result::Result<Vec<T>, _>>()?;
        QSeries::new(coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BigRational, Series};
    use num_rational::Ratio;

    fn s(c: &[i64]) -> Series {
        Series::from_ints(c).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn combine_cancels() {
        let a = s(&[3, -1, 4, 1, 5]);
        let z = linear_combine(&[(r(1, 1), &a), (r(-1, 1), &a)]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.prec(), 5);
        let two = linear_combine(&[(r(2, 1), &s(&[1, 1]))]).unwrap();
        assert_eq!(two, s(&[2, 2]));
    }

    #[test]
    fn combine_takes_min_precision() {
        let out = linear_combine(&[(r(1, 1), &s(&[1, 1, 1])), (r(1, 1), &s(&[1, 1]))]).unwrap();
        assert_eq!(out, s(&[2, 2]));
        assert_eq!(linear_combine::<BigRational>(&[]), Err(Error::EmptyCombination));
    }

    #[test]
    fn mul_small() {
        assert_eq!(&s(&[1, 1, 0, 0]) * &s(&[1, -1, 0, 0]), s(&[1, 0, -1, 0]));
        assert_eq!((&s(&[1, 2, 3]) * &s(&[1, 1])).prec(), 2);
    }

    #[test]
    fn invert_cases() {
        assert_eq!(s(&[1, -1, 0, 0, 0]).invert().unwrap(), s(&[1, 1, 1, 1, 1]));
        let half = s(&[2, 0, 0]).invert().unwrap();
        assert_eq!(half.coeffs(), &[r(1, 2), r(0, 1), r(0, 1)]);
        assert_eq!(s(&[0, 1]).invert(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn q_derive_cases() {
        assert!(s(&[1, 0, 0]).q_derive().is_zero());
        assert_eq!(s(&[0, 0, 0, 1, 0]).q_derive(), s(&[0, 0, 0, 3, 0]));
    }

    #[test]
    fn coeff_bounds() {
        let a = s(&[0, 0, 0]);
        assert_eq!(a.coeff(2).unwrap(), &r(0, 1));
        assert_eq!(a.coeff(3), Err(Error::PrecisionExceeded { index: 3, prec: 3 }));
    }

    #[test]
    fn product_expand_trivial_and_errors() {
        let one: Series = product_expand(|_| 0, 0, 6).unwrap();
        assert_eq!(one, Series::one(6));
        assert_eq!(product_expand::<BigRational>(|_| 24, -1, 6), Err(Error::NegativePrefactor(-1)));
        let shifted: Series = product_expand(|_| 0, 9, 4).unwrap();
        assert!(shifted.is_zero());
    }

    #[test]
    fn product_expand_euler() {
        // prod (1 - q^n): pentagonal numbers 0, 1, 2, 5, 7, 12, 15
        let e: Series = product_expand(|_| 1, 0, 16).unwrap();
        assert_eq!(e, s(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]));
    }

    #[test]
    fn json_encoding() {
        let a = QSeries::new(vec![r(0, 1), r(1, 1), r(-24, 1), r(3, 2)]).unwrap();
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"prec":4,"coeffs":["0","1","-24","3/2"]}"#);
        let back: Series = serde_json::from_str(r#"{"prec":4,"coeffs":["0","1","-24","252/168"]}"#).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Series>(r#"{"prec":3,"coeffs":["0"]}"#).is_err());
        assert!(serde_json::from_str::<Series>(r#"{"prec":0,"coeffs":[]}"#).is_err());
    }

    #[test]
    fn generic_over_fixed_width() {
        let a = QSeries::<Ratio<i64>>::from_ints(&[1, -1, 0, 0]).unwrap();
        assert_eq!(a.invert().unwrap(), QSeries::from_ints(&[1, 1, 1, 1]).unwrap());
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, 0, -24]).to_string(), "1 + (-24)q^2 + O(q^3)");
        assert_eq!(s(&[0]).to_string(), "O(q^1)");
    }
}
