//! Genus-0 potential of a Weierstrass fibration `X -> B -> M` from the
//! discrete data `(g, deg L_M, b)`.
//!
//! The quasi-modular form is
//! `phi = -deg(lambda) E10 + c q d/dq E8`, with the boundary constant
//! `c = -b/8` fixed by matching `q^1` against the number of `A1` fibers.
//! From `phi` we get the curve counts `r_X(n)`, the potential
//! `F = phi q/Delta`, and two independent checks: the anomaly equation
//! `dphi/dE2 = -(b/12) E8`, and a recomputation of `F` through the conifold
//! degeneration that only agrees after a nontrivial cancellation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{theta_series, NamedLattice};
use crate::modforms::{self, eisenstein, reduced_k3, Monomial};
use crate::qseries::{self, QSeries};
use crate::scalar::Scalar;
use crate::surfgeom::{self, SurfaceContext};
use crate::{QmPoly, Series};

pub const DEFAULT_PREC: usize = 12;
/// Smallest precision accepted for a geometry run.
pub const MIN_PREC: usize = 8;
/// Precision at which weight-10 decompositions are certified
/// (twice the number of weight-10 monomials).
pub const DECOMPOSE_PREC: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryInput {
    pub g: i64,
    pub deg_lm: i64,
    pub b: usize,
    pub prec: usize,
}

impl GeometryInput {
    pub fn new(g: i64, deg_lm: i64, b: usize, prec: usize) -> Result<Self> {
        if prec < MIN_PREC {
            return Err(Error::InsufficientPrecision { required: MIN_PREC, got: prec });
        }
        if g < 0 {
            return Err(Error::Parse(format!("genus {g} is negative")));
        }
        Ok(Self { g, deg_lm, b, prec })
    }

    pub fn surface(&self, zeta_sq: i64) -> SurfaceContext {
        SurfaceContext::new(self.g, zeta_sq, self.b)
    }

    fn b_i64(&self) -> i64 {
        self.b as i64
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_i128(v as i128)
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure_prec(s: &Series, prec: usize) -> Result<()> {
    if s.prec() < prec {
        return Err(Error::InsufficientPrecision { required: prec, got: s.prec() });
    }
    Ok(())
}

/// `deg_M(lambda) = deg(L_M) + 2(1-g)`, from `q_* omega_{X/M} = L_M (x) omega_M^-1`.
pub fn hodge_degree(g: i64, deg_lm: i64) -> i64 {
    deg_lm + 2 * (1 - g)
}

/// `a_1 = 264 deg(L_M) + 528(1-g) - 60b`.
pub fn a1_closed_form(g: i64, deg_lm: i64, b: usize) -> i64 {
    264 * deg_lm + 528 * (1 - g) - 60 * b as i64
}

/// Boundary constant, computed as `(a_1 - 264 deg lambda)/480` and as
/// `-b/8`; the two must agree.
pub fn boundary_constant(g: i64, deg_lm: i64, b: usize) -> Result<BigRational> {
    let a1 = a1_closed_form(g, deg_lm, b);
    let from_q1 = frac(a1 - 264 * hodge_degree(g, deg_lm), 480);
    let from_b = frac(-(b as i64), 8);
    if from_q1 != from_b {
        return Err(Error::InternalInconsistency(format!(
            "boundary constant: q^1 matching gives {from_q1}, -b/8 gives {from_b}"
        )));
    }
    Ok(from_b)
}

/// `s E10 + c q d/dq E8`: an interior (modular) part plus a boundary part.
pub fn completed_nl_series(interior: &BigRational, boundary: &BigRational, prec: usize) -> Result<Series> {
    let e10: Series = eisenstein(10, prec)?;
    let de8 = eisenstein::<BigRational>(8, prec)?.q_derive();
    qseries::linear_combine(&[(interior.clone(), &e10), (boundary.clone(), &de8)])
}

/// `q d/dq E8 = (2/3)(E2 E4^2 - E4 E6)`.
pub fn q_derive_e8_poly() -> QmPoly {
    QmPoly::from_terms(10, [(Monomial::new(1, 2, 0), frac(2, 3)), (Monomial::new(0, 1, 1), frac(-2, 3))])
        .expect("weight 10")
}

/// `-deg(lambda) E4 E6 + c (2/3)(E2 E4^2 - E4 E6)`.
pub fn phi_poly(input: &GeometryInput) -> Result<QmPoly> {
    let dl = hodge_degree(input.g, input.deg_lm);
    let c = boundary_constant(input.g, input.deg_lm, input.b)?;
    let interior = QmPoly::monomial(Monomial::new(0, 1, 1), rat(-dl));
    interior.add(&q_derive_e8_poly().scale(&c))
}

/// Checks `E10 = E4 E6` to `prec` before anything relies on it.
pub fn verify_e10_identity(prec: usize) -> Result<()> {
    let e10: Series = eisenstein(10, prec)?;
    let e4e6 = &eisenstein::<BigRational>(4, prec)? * &eisenstein(6, prec)?;
    match e10.first_difference(&e4e6) {
        None => Ok(()),
        Some(n) => Err(Error::InternalInconsistency(format!("E10 != E4*E6 at q^{n}"))),
    }
}

/// The series and polynomial forms of `phi`, cross-checked: the polynomial
/// expands to the series, and decomposing the series recovers the polynomial.
pub fn phi(input: &GeometryInput) -> Result<(Series, QmPoly)> {
    let work = input.prec.max(DECOMPOSE_PREC);
    verify_e10_identity(work)?;
    let dl = hodge_degree(input.g, input.deg_lm);
    let c = boundary_constant(input.g, input.deg_lm, input.b)?;
    let series = completed_nl_series(&rat(-dl), &c, work)?;
    let poly = phi_poly(input)?;
    if let Some(n) = poly.expand(work)?.first_difference(&series) {
        return Err(Error::InternalInconsistency(format!("phi polynomial and series differ at q^{n}")));
    }
    let recovered = modforms::qm_decompose(&series, 10, work)?;
    if recovered != poly {
        return Err(Error::InternalInconsistency("decomposition of phi does not round-trip".into()));
    }
    Ok((series.truncate(input.prec), poly))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnomalyCheck {
    pub ok: bool,
    /// `dphi/dE2 + (b/12) E8` as a polynomial (weight 8).
    pub residual: QmPoly,
    pub series_residual_zero: bool,
}

/// `dphi/dE2 + (b/12) E8 = 0` in the polynomial ring and as a q-series.
pub fn anomaly_check(input: &GeometryInput) -> Result<AnomalyCheck> {
    let (_, poly) = phi(input)?;
    let e8 = QmPoly::monomial(Monomial::new(0, 2, 0), BigRational::one());
    let residual = poly.anomaly_derivative().add(&e8.scale(&frac(input.b_i64(), 12)))?;
    let expanded = residual.expand(input.prec)?;
    let series_residual_zero = expanded.is_zero();
    Ok(AnomalyCheck { ok: residual.is_zero() && series_residual_zero, residual, series_residual_zero })
}

/// `Theta_1 = sum_r q^{r^2}`, read off the `A1` lattice.
pub fn theta_one(prec: usize) -> Result<Series> {
    theta_series(&NamedLattice::A1.lattice(), prec)
}

/// `phi - (a_1/2) Theta_1 + a_1/2 + deg(lambda)` as exact coefficients.
fn rx_rational(input: &GeometryInput, phi_series: &Series) -> Result<Series> {
    ensure_prec(phi_series, input.prec)?;
    let a1 = a1_closed_form(input.g, input.deg_lm, input.b);
    let dl = hodge_degree(input.g, input.deg_lm);
    let th = theta_one(input.prec)?;
    let shift = Series::constant(frac(a1, 2) + rat(dl), input.prec);
    qseries::linear_combine(&[(rat(1), phi_series), (frac(-a1, 2), &th), (rat(1), &shift)])
}

/// Counts `r_X(n)` for `0 <= n < prec`. `r_X(0) = r_X(1) = 0` always.
pub fn rx_series(input: &GeometryInput) -> Result<Vec<BigInt>> {
    let (series, _) = phi(input)?;
    let r = rx_rational(input, &series)?;
    r.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.to_bigint().ok_or(Error::NonIntegralCount(n)))
        .collect()
}

/// `F = phi q/Delta`; coefficient `n` is `N_{0, l + n f}`.
pub fn gw_potential(input: &GeometryInput) -> Result<Series> {
    let (series, _) = phi(input)?;
    ensure_prec(&series, input.prec)?;
    let k3: Series = reduced_k3(input.prec)?;
    Ok(qseries::mul(&series, &k3))
}

/// Recomputes `F` on the conifold side, coefficient by coefficient:
/// `N^Y_n = sum_{j=2}^n 2 r_X(j) [q/Delta]_{n-j} - 2 deg(lambda) [q/Delta]_n`,
/// plus `a_1` nodes each contributing `[q/Delta]_{n-r^2}` for `r != 0`,
/// and the degeneration halves the total.
pub fn degeneration_oracle(input: &GeometryInput) -> Result<Series> {
    let rx = rx_series(input)?;
    degeneration_from_counts(input, &rx)
}

pub fn degeneration_from_counts(input: &GeometryInput, rx: &[BigInt]) -> Result<Series> {
    let prec = input.prec;
    if rx.len() < prec {
        return Err(Error::InsufficientPrecision { required: prec, got: rx.len() });
    }
    let k3: Series = reduced_k3(prec)?;
    let k = |i: usize| -> BigInt { k3.coeffs()[i].to_bigint().expect("integral") };
    let a1 = BigInt::from(a1_closed_form(input.g, input.deg_lm, input.b));
    let dl = BigInt::from(hodge_degree(input.g, input.deg_lm));

    let coeffs = (0..prec)
        .map(|n| {
            let mut total = BigInt::zero();
            for j in 2..=n {
                total += 2 * &rx[j] * k(n - j);
            }
            total -= 2 * &dl * k(n);
            let mut r = 1usize;
            while r * r <= n {
                // r and -r
                total += 2 * &a1 * k(n - r * r);
                r += 1;
            }
            BigRational::new(total, BigInt::from(2))
        })
        .collect();
    QSeries::new(coeffs)
}

/// Dimension bookkeeping for the curve class `beta` on `B` with
/// `c_1(L).beta = k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VdimReport {
    /// `vdim Mbar_g(B, beta)`.
    pub base_vdim: i64,
    /// `c_1(B).beta` forced by the base dimension.
    pub c1_base_dot_beta: i64,
    /// `vdim Mbar_g(X, alpha)` of the lifted class; always zero.
    pub total_vdim: i64,
}

/// `c_1 . alpha + (1 - g)(dim - 3)`.
pub fn kontsevich_vdim(c1_dot_alpha: i64, g: i64, dim: i64) -> i64 {
    c1_dot_alpha + (1 - g) * (dim - 3)
}

pub fn vdim_total(k: i64, g: i64, dim_b: i64) -> VdimReport {
    let base_vdim = surfgeom::vdim_base(g, k);
    let c1_base_dot_beta = base_vdim - (1 - g) * (dim_b - 3);
    debug_assert_eq!(kontsevich_vdim(c1_base_dot_beta, g, dim_b), base_vdim);
    // c_1(X).alpha = c_1(B).beta - c_1(L).beta, and dim X = dim B + 1.
    let total_vdim = kontsevich_vdim(c1_base_dot_beta - k, g, dim_b + 1);
    VdimReport { base_vdim, c1_base_dot_beta, total_vdim }
}

fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_display_vec<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub input: GeometryInput,
    #[serde(serialize_with = "ser_display")]
    pub hodge_degree: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub a1: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub a1_riemann_hurwitz: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub c: BigRational,
    pub phi_series: Series,
    pub phi_poly: QmPoly,
    #[serde(serialize_with = "ser_display_vec")]
    pub rx: Vec<BigInt>,
    pub potential: Series,
    pub oracle_potential: Series,
    pub anomaly_residual: QmPoly,
    pub anomaly_ok: bool,
    pub oracle_ok: bool,
    pub a1_ok: bool,
    pub warnings: Vec<String>,
}

impl PipelineReport {
    pub fn all_ok(&self) -> bool {
        self.anomaly_ok && self.oracle_ok && self.a1_ok
    }
}

/// Runs every stage for one input. Verification failures are reported in
/// the flags; only malformed input or internal inconsistencies are errors.
pub fn run(input: &GeometryInput, zeta_sq: i64) -> Result<PipelineReport> {
    let dl = hodge_degree(input.g, input.deg_lm);
    let a1 = a1_closed_form(input.g, input.deg_lm, input.b);
    let a1_rh = surfgeom::a1_riemann_hurwitz(input.surface(zeta_sq), input.deg_lm);
    let c = boundary_constant(input.g, input.deg_lm, input.b)?;
    let (phi_series, phi_poly) = phi(input)?;
    let anomaly = anomaly_check(input)?;
    let rx = rx_series(input)?;
    let potential = gw_potential(input)?;
    let oracle_potential = degeneration_from_counts(input, &rx)?;

    let mut warnings = Vec::new();
    if a1 < 0 {
        warnings.push(format!("a1 = {a1} is negative; deg(L_M) is below the range where the count is geometric"));
    }
    for (n, r) in rx.iter().enumerate() {
        if r.is_negative() {
            warnings.push(format!("r_X({n}) = {r} is negative"));
        }
    }

    Ok(PipelineReport {
        input: *input,
        hodge_degree: rat(dl),
        a1: rat(a1),
        a1_riemann_hurwitz: rat(a1_rh),
        c,
        oracle_ok: potential.agrees_with(&oracle_potential),
        a1_ok: a1 == a1_rh,
        phi_series,
        phi_poly,
        rx,
        potential,
        oracle_potential,
        anomaly_ok: anomaly.ok,
        anomaly_residual: anomaly.residual,
        warnings,
    })
}
