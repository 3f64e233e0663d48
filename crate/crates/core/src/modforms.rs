//! Eisenstein series, the discriminant, and the ring `Q[E2, E4, E6]`.
//!
//! `E2` is handled as a free polynomial generator. Nothing here models its
//! transformation law; the ring structure and the formal derivative
//! `d/dE2` are all that is needed.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::qseries::{self, product_expand, QSeries};
use crate::scalar::{int, parse_rational, Scalar};

/// `sum_{d | n} d^k` by trial division.
///
/// Panics on `n == 0` or if the sum overflows `u128`.
pub fn sigma(k: u32, n: u64) -> u128 {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut total: u128 = 0;
    let mut d: u64 = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let e = n / d;
            total = total.checked_add(pow(d, k)).expect("sigma overflow");
            if e != d {
                total = total.checked_add(pow(e, k)).expect("sigma overflow");
            }
        }
        d += 1;
    }
    total
}

fn pow(d: u64, k: u32) -> u128 {
    (d as u128).checked_pow(k).expect("sigma overflow")
}

/// Normalization `E_k = 1 + constant * sum sigma_{k-1}(n) q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EisensteinTable {
    pub weight: u32,
    pub constant: i64,
    pub divisor_power: u32,
}

impl EisensteinTable {
    /// `-2k / B_k` for k = 2, 4, 6, 8, 10.
    pub const ALL: [EisensteinTable; 5] = [
        EisensteinTable { weight: 2, constant: -24, divisor_power: 1 },
        EisensteinTable { weight: 4, constant: 240, divisor_power: 3 },
        EisensteinTable { weight: 6, constant: -504, divisor_power: 5 },
        EisensteinTable { weight: 8, constant: 480, divisor_power: 7 },
        EisensteinTable { weight: 10, constant: -264, divisor_power: 9 },
    ];

    pub fn for_weight(k: u32) -> Result<Self> {
        Self::ALL.iter().copied().find(|t| t.weight == k).ok_or(Error::UnsupportedWeight(k))
    }

    pub fn series<T: Scalar>(&self, prec: usize) -> Result<QSeries<T>> {
        if prec == 0 {
            return Err(Error::ZeroPrecision);
        }
        let c = T::from_i128(self.constant as i128);
        Ok(QSeries::from_fn(prec, |n| {
            if n == 0 {
                T::one()
            } else {
                let s = sigma(self.divisor_power, n as u64);
                let s = i128::try_from(s).expect("sigma exceeds i128");
                c.clone() * T::from_i128(s)
            }
        }))
    }
}

pub fn eisenstein<T: Scalar>(k: u32, prec: usize) -> Result<QSeries<T>> {
    EisensteinTable::for_weight(k)?.series(prec)
}

/// `Delta = q prod (1 - q^m)^24`.
pub fn delta<T: Scalar>(prec: usize) -> Result<QSeries<T>> {
    if prec < 2 {
        return Err(Error::InsufficientPrecision { required: 2, got: prec });
    }
    product_expand(|_| 24, 1, prec)
}

/// Coefficients `[q/Delta]_n`, i.e. `prod (1 - q^m)^-24`.
pub fn reduced_k3<T: Scalar>(prec: usize) -> Result<QSeries<T>> {
    product_expand(|_| -24, 0, prec)
}

/// Exponents of `E2^e2 E4^e4 E6^e6`. The derived order is lexicographic
/// in `(e2, e4, e6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub e2: u32,
    pub e4: u32,
    pub e6: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e2: 0, e4: 0, e6: 0 };

    pub const fn new(e2: u32, e4: u32, e6: u32) -> Self {
        Self { e2, e4, e6 }
    }

    pub fn weight(&self) -> u32 {
        2 * self.e2 + 4 * self.e4 + 6 * self.e6
    }

    fn times(&self, other: &Self) -> Self {
        Self::new(self.e2 + other.e2, self.e4 + other.e4, self.e6 + other.e6)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::ONE {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, e) in [("E2", self.e2), ("E4", self.e4), ("E6", self.e6)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of the given weight, lexicographically ascending.
pub fn monomials(weight: u32) -> Result<Vec<Monomial>> {
    if !weight.is_multiple_of(2) {
        return Err(Error::OddWeight(weight));
    }
    let mut out = Vec::new();
    for e2 in 0..=weight / 2 {
        for e4 in 0..=weight / 4 {
            let used = 2 * e2 + 4 * e4;
            if used <= weight && (weight - used).is_multiple_of(6) {
                out.push(Monomial::new(e2, e4, (weight - used) / 6));
            }
        }
    }
    Ok(out)
}

/// Homogeneous element of `Q[E2, E4, E6]`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiModularPoly<T> {
    weight: u32,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> QuasiModularPoly<T> {
    pub fn zero(weight: u32) -> Result<Self> {
        if !weight.is_multiple_of(2) {
            return Err(Error::OddWeight(weight));
        }
        Ok(Self { weight, terms: BTreeMap::new() })
    }

    pub fn monomial(m: Monomial, coeff: T) -> Self {
        let mut p = Self { weight: m.weight(), terms: BTreeMap::new() };
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        p
    }

    pub fn from_terms(weight: u32, terms: impl IntoIterator<Item = (Monomial, T)>) -> Result<Self> {
        let mut p = Self::zero(weight)?;
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    /// Adds `coeff * m`; rejects monomials of the wrong weight.
    pub fn add_term(&mut self, m: Monomial, coeff: T) -> Result<()> {
        if m.weight() != self.weight {
            return Err(Error::WeightMismatch { weight: self.weight, exponents: (m.e2, m.e4, m.e6) });
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
        Ok(())
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self { weight: self.weight, terms: BTreeMap::new() };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())).collect();
        }
        out
    }

    /// Sum of two polynomials of the same weight.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        if other.weight != self.weight && !other.is_zero() {
            let m = other.terms.keys().next().copied().unwrap_or(Monomial::ONE);
            return Err(Error::WeightMismatch { weight: self.weight, exponents: (m.e2, m.e4, m.e6) });
        }
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self { weight: self.weight + other.weight, terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca.clone() * cb.clone()).expect("weights add");
            }
        }
        out
    }

    /// True when no term involves `E2`, i.e. the form is modular.
    pub fn is_modular(&self) -> bool {
        self.terms.keys().all(|m| m.e2 == 0)
    }

    /// Formal partial derivative in `E2`. The result has weight two less;
    /// a weight-0 input gives the zero polynomial of weight 0.
    pub fn anomaly_derivative(&self) -> Self {
        let mut out = Self { weight: self.weight.saturating_sub(2), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            if m.e2 > 0 {
                let dm = Monomial::new(m.e2 - 1, m.e4, m.e6);
                out.add_term(dm, c.clone() * int(m.e2 as i64)).expect("weight drops by 2");
            }
        }
        out
    }

    /// Substitutes the Eisenstein series for the generators.
    pub fn expand(&self, prec: usize) -> Result<QSeries<T>> {
        qm_expand(self, prec)
    }
}

impl<T: Scalar> fmt::Display for QuasiModularPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

/// Powers `g^0, g^1, ...` of a generator series, built on demand.
struct PowerCache<T> {
    base: QSeries<T>,
    powers: Vec<QSeries<T>>,
}

impl<T: Scalar> PowerCache<T> {
    fn new(base: QSeries<T>) -> Self {
        let one = QSeries::one(base.prec());
        Self { base, powers: vec![one] }
    }

    fn get(&mut self, e: u32) -> &QSeries<T> {
        while self.powers.len() <= e as usize {
            let next = qseries::mul(self.powers.last().unwrap(), &self.base);
            self.powers.push(next);
        }
        &self.powers[e as usize]
    }
}

pub fn qm_expand<T: Scalar>(p: &QuasiModularPoly<T>, prec: usize) -> Result<QSeries<T>> {
    let mut e2 = PowerCache::new(eisenstein::<T>(2, prec)?);
    let mut e4 = PowerCache::new(eisenstein::<T>(4, prec)?);
    let mut e6 = PowerCache::new(eisenstein::<T>(6, prec)?);
    let mut out = QSeries::zero(prec);
    for (m, c) in &p.terms {
        let t = qseries::mul(e2.get(m.e2), e4.get(m.e4));
        let t = qseries::mul(&t, e6.get(m.e6));
        out = &out + &t.scale(c);
    }
    Ok(out)
}

/// Writes `s` (to `prec`) as a weight-`weight` polynomial in `E2, E4, E6`.
///
/// Requires `prec >= 2 * (number of monomials)`. The coefficients are fixed
/// by the shortest leading block of rows with full rank; every remaining
/// coefficient must then match or the result is `NotInRing`.
pub fn qm_decompose<T: Scalar>(s: &QSeries<T>, weight: u32, prec: usize) -> Result<QuasiModularPoly<T>> {
    decompose_over(s, weight, prec, monomials(weight)?)
}

/// Like [`qm_decompose`] but over the modular subring `Q[E4, E6]`.
pub fn modular_decompose<T: Scalar>(s: &QSeries<T>, weight: u32, prec: usize) -> Result<QuasiModularPoly<T>> {
    let basis = monomials(weight)?.into_iter().filter(|m| m.e2 == 0).collect();
    decompose_over(s, weight, prec, basis)
}

fn decompose_over<T: Scalar>(
    s: &QSeries<T>,
    weight: u32,
    prec: usize,
    basis: Vec<Monomial>,
) -> Result<QuasiModularPoly<T>> {
    let required = (2 * basis.len()).max(1);
    if prec < required {
        return Err(Error::InsufficientPrecision { required, got: prec });
    }
    if s.prec() < prec {
        return Err(Error::InsufficientPrecision { required: prec, got: s.prec() });
    }
    if basis.is_empty() {
        // Weights like 2 have no modular monomials; only zero lies in the span.
        return match s.coeffs()[..prec].iter().position(|c| !c.is_zero()) {
            None => QuasiModularPoly::zero(weight),
            Some(index) => Err(Error::NotInRing { weight, index }),
        };
    }
    let columns: Vec<QSeries<T>> = basis
        .iter()
        .map(|m| QuasiModularPoly::monomial(*m, T::one()).expand(prec))
        .collect::<Result<_>>()?;
    let row = |n: usize| -> Vec<T> { columns.iter().map(|c| c.coeffs()[n].clone()).collect() };

    let mut lead = basis.len();
    while lead <= prec && linalg::rank(&(0..lead).map(row).collect::<Vec<_>>()) < basis.len() {
        lead += 1;
    }
    if lead > prec {
        return Err(Error::InsufficientPrecision { required: prec + 1, got: prec });
    }
    let a: Vec<Vec<T>> = (0..lead).map(row).collect();
    let x = match linalg::solve(&a, &s.coeffs()[..lead]) {
        Solution::Unique(x) => x,
        Solution::Inconsistent { .. } | Solution::Underdetermined => {
            // Full column rank means the only failure is inconsistency; report
            // the first coefficient the least-index fit cannot reproduce.
            let index = first_inconsistent_row(&a, &s.coeffs()[..lead]);
            return Err(Error::NotInRing { weight, index });
        }
    };
    let poly = QuasiModularPoly::from_terms(weight, basis.iter().copied().zip(x))?;
    let fitted = poly.expand(prec)?;
    if let Some(index) = fitted.first_difference(&s.truncate(prec)) {
        return Err(Error::NotInRing { weight, index });
    }
    Ok(poly)
}

fn first_inconsistent_row<T: Scalar>(a: &[Vec<T>], b: &[T]) -> usize {
    (1..=a.len())
        .find(|&k| matches!(linalg::solve(&a[..k], &b[..k]), Solution::Inconsistent { .. }))
        .map_or(a.len().saturating_sub(1), |k| k - 1)
}

/// Result of checking one q-series identity coefficient by coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub first_failure: Option<usize>,
}

impl IdentityCheck {
    pub fn compare<T: Scalar>(name: &str, lhs: &QSeries<T>, rhs: &QSeries<T>) -> Self {
        let first_failure = lhs.first_difference(rhs);
        Self { name: name.to_string(), passed: first_failure.is_none(), first_failure }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamanujanReport {
    pub prec: usize,
    pub checks: Vec<IdentityCheck>,
}

impl RamanujanReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks the three derivative identities for `E2, E4, E6` to `prec`.
pub fn ramanujan_verify<T: Scalar>(prec: usize) -> Result<RamanujanReport> {
    let e2 = eisenstein::<T>(2, prec)?;
    let e4 = eisenstein::<T>(4, prec)?;
    let e6 = eisenstein::<T>(6, prec)?;
    let frac = |n: i64, d: i64| int::<T>(n) / int::<T>(d);

    let d2 = qseries::linear_combine(&[(frac(1, 12), &(&e2 * &e2)), (frac(-1, 12), &e4)])?;
    let d4 = qseries::linear_combine(&[(frac(1, 3), &(&e2 * &e4)), (frac(-1, 3), &e6)])?;
    let d6 = qseries::linear_combine(&[(frac(1, 2), &(&e2 * &e6)), (frac(-1, 2), &(&e4 * &e4))])?;

    Ok(RamanujanReport {
        prec,
        checks: vec![
            IdentityCheck::compare("q dE2/dq = (E2^2 - E4)/12", &e2.q_derive(), &d2),
            IdentityCheck::compare("q dE4/dq = (E2 E4 - E6)/3", &e4.q_derive(), &d4),
            IdentityCheck::compare("q dE6/dq = (E2 E6 - E4^2)/2", &e6.q_derive(), &d6),
        ],
    })
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    e2: u32,
    e4: u32,
    e6: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    weight: u32,
    terms: Vec<TermRepr>,
}

impl<T: Scalar> Serialize for QuasiModularPoly<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            weight: self.weight,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr { e2: m.e2, e4: m.e4, e6: m.e6, coeff: c.to_string() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for QuasiModularPoly<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = QuasiModularPoly::zero(repr.weight).map_err(D::Error::custom)?;
        for t in repr.terms {
            let c: T = parse_rational(&t.coeff)
                .ok_or_else(|| D::Error::custom(format!("bad rational `{}`", t.coeff)))?;
            p.add_term(Monomial::new(t.e2, t.e4, t.e6), c).map_err(D::Error::custom)?;
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BigRational, QmPoly, Series};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1, 1), 1);
        assert_eq!(sigma(3, 2), 9);
        assert_eq!(sigma(7, 3), 2188);
        assert_eq!(sigma(0, 12), 6);
        assert_eq!(sigma(1, 36), 91);
    }

    #[test]
    fn eisenstein_leading_terms() {
        let e4: Series = eisenstein(4, 4).unwrap();
        assert_eq!(e4, Series::from_ints(&[1, 240, 2160, 6720]).unwrap());
        let e10: Series = eisenstein(10, 2).unwrap();
        assert_eq!(e10.coeff(1).unwrap(), &q(-264, 1));
        let e8: Series = eisenstein(8, 2).unwrap();
        assert_eq!(e8.coeff(1).unwrap(), &q(480, 1));
        assert_eq!(eisenstein::<BigRational>(12, 4), Err(Error::UnsupportedWeight(12)));
        assert_eq!(eisenstein::<BigRational>(4, 0), Err(Error::ZeroPrecision));
    }

    #[test]
    fn delta_and_reduced_k3() {
        let d: Series = delta(4).unwrap();
        assert_eq!(d, Series::from_ints(&[0, 1, -24, 252]).unwrap());
        assert!(matches!(delta::<BigRational>(1), Err(Error::InsufficientPrecision { .. })));
        let k3: Series = reduced_k3(3).unwrap();
        assert_eq!(k3, Series::from_ints(&[1, 24, 324]).unwrap());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(0).unwrap(), vec![Monomial::ONE]);
        assert_eq!(monomials(2).unwrap().len(), 1);
        let w10 = monomials(10).unwrap();
        assert_eq!(
            w10,
            vec![
                Monomial::new(0, 1, 1),
                Monomial::new(1, 2, 0),
                Monomial::new(2, 0, 1),
                Monomial::new(3, 1, 0),
                Monomial::new(5, 0, 0),
            ]
        );
        assert_eq!(monomials(3), Err(Error::OddWeight(3)));
    }

    #[test]
    fn homogeneity_enforced() {
        let mut p = QmPoly::zero(10).unwrap();
        assert!(p.add_term(Monomial::new(0, 1, 0), q(1, 1)).is_err());
        p.add_term(Monomial::new(0, 1, 1), q(1, 1)).unwrap();
        p.add_term(Monomial::new(0, 1, 1), q(-1, 1)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn expand_constant_and_product() {
        let one = QmPoly::monomial(Monomial::ONE, q(1, 1));
        assert_eq!(one.expand(5).unwrap(), Series::one(5));
        let e4e6 = QmPoly::monomial(Monomial::new(0, 1, 1), q(1, 1));
        assert_eq!(e4e6.expand(12).unwrap(), eisenstein::<BigRational>(10, 12).unwrap());
    }

    #[test]
    fn derivative_of_e8_as_polynomial() {
        // (2/3)(E2 E4^2 - E4 E6) = q dE8/dq
        let p = QmPoly::from_terms(
            10,
            [(Monomial::new(1, 2, 0), q(2, 3)), (Monomial::new(0, 1, 1), q(-2, 3))],
        )
        .unwrap();
        let e8: Series = eisenstein(8, 15).unwrap();
        assert_eq!(p.expand(15).unwrap(), e8.q_derive());
        let d = p.anomaly_derivative();
        assert_eq!(d, QmPoly::monomial(Monomial::new(0, 2, 0), q(2, 3)));
        assert_eq!(d.weight(), 8);
    }

    #[test]
    fn anomaly_derivative_cases() {
        let e4e6 = QmPoly::monomial(Monomial::new(0, 1, 1), q(1, 1));
        assert!(e4e6.anomaly_derivative().is_zero());
        let e2e4sq = QmPoly::monomial(Monomial::new(1, 2, 0), q(1, 1));
        assert_eq!(e2e4sq.anomaly_derivative(), QmPoly::monomial(Monomial::new(0, 2, 0), q(1, 1)));
        let e2cubed = QmPoly::monomial(Monomial::new(3, 0, 0), q(1, 2));
        assert_eq!(e2cubed.anomaly_derivative(), QmPoly::monomial(Monomial::new(2, 0, 0), q(3, 2)));
    }

    #[test]
    fn decompose_e10() {
        let e10: Series = eisenstein(10, 12).unwrap();
        let p = qm_decompose(&e10, 10, 12).unwrap();
        assert_eq!(p, QmPoly::monomial(Monomial::new(0, 1, 1), q(1, 1)));
        let m = modular_decompose(&e10, 10, 12).unwrap();
        assert_eq!(m, p);
    }

    #[test]
    fn decompose_zero_and_errors() {
        let z = Series::zero(12);
        assert!(qm_decompose(&z, 10, 12).unwrap().is_zero());
        assert_eq!(
            qm_decompose(&z, 10, 9),
            Err(Error::InsufficientPrecision { required: 10, got: 9 })
        );
        let e4: Series = eisenstein(4, 6).unwrap();
        let bump = Series::monomial(q(1, 1), 5, 6);
        let perturbed = &e4 + &bump;
        assert_eq!(qm_decompose(&perturbed, 4, 6), Err(Error::NotInRing { weight: 4, index: 5 }));
        // E2 is quasi-modular but not modular; weight 2 has no modular monomial.
        let e2: Series = eisenstein(2, 4).unwrap();
        assert!(matches!(modular_decompose(&e2, 2, 4), Err(Error::NotInRing { index: 0, .. })));
    }

    #[test]
    fn decompose_needs_series_precision() {
        let e4: Series = eisenstein(4, 3).unwrap();
        assert_eq!(qm_decompose(&e4, 4, 4), Err(Error::InsufficientPrecision { required: 4, got: 3 }));
    }

    #[test]
    fn ramanujan_small_cases() {
        let r = ramanujan_verify::<BigRational>(20).unwrap();
        assert!(r.all_passed(), "{r:?}");
        let r1 = ramanujan_verify::<BigRational>(1).unwrap();
        assert!(r1.all_passed());
        // (E2 E4 - E6)/3 at q^1: (-24 + 240 + 504)/3 = 240
        let e2: Series = eisenstein(2, 2).unwrap();
        let e4: Series = eisenstein(4, 2).unwrap();
        let e6: Series = eisenstein(6, 2).unwrap();
        let rhs = &(&e2 * &e4) - &e6;
        assert_eq!(rhs.coeff(1).unwrap() / q(3, 1), q(240, 1));
    }

    #[test]
    fn poly_json() {
        let p = QmPoly::from_terms(
            10,
            [(Monomial::new(1, 2, 0), q(2, 3)), (Monomial::new(0, 1, 1), q(-12, 1))],
        )
        .unwrap();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(
            j,
            r#"{"weight":10,"terms":[{"e2":0,"e4":1,"e6":1,"coeff":"-12"},{"e2":1,"e4":2,"e6":0,"coeff":"2/3"}]}"#
        );
        assert_eq!(serde_json::from_str::<QmPoly>(&j).unwrap(), p);
        let bad = r#"{"weight":10,"terms":[{"e2":1,"e4":0,"e6":0,"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<QmPoly>(bad).is_err());
    }
}
