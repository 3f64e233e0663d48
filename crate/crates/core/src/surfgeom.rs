//! Intersection theory on `B`, a `b`-fold blow-up of a `P^1`-bundle over a
//! genus-`g` curve `M` at points in distinct fibers.
//!
//! `Pic(B)` is spanned by the tautological class `zeta`, the ruling `ell`
//! and exceptional curves `e_1..e_b`, with
//! `zeta.ell = 1`, `ell^2 = 0`, `e_i.e_j = -delta_ij`, `e_i.zeta = e_i.ell = 0`
//! and `zeta^2` a free parameter (the bundle's normalization).

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceContext {
    pub g: i64,
    pub zeta_sq: i64,
    pub b: usize,
}

impl SurfaceContext {
    pub fn new(g: i64, zeta_sq: i64, b: usize) -> Self {
        Self { g, zeta_sq, b }
    }

    pub fn zeta(&self) -> DivisorClass {
        DivisorClass::new(*self, 1, 0, vec![0; self.b]).expect("length matches")
    }

    pub fn ell(&self) -> DivisorClass {
        DivisorClass::new(*self, 0, 1, vec![0; self.b]).expect("length matches")
    }

    /// `e_i`, zero-based.
    pub fn exceptional(&self, i: usize) -> Result<DivisorClass> {
        if i >= self.b {
            return Err(Error::ExceptionalIndex { index: i, b: self.b });
        }
        let mut e = vec![0; self.b];
        e[i] = 1;
        DivisorClass::new(*self, 0, 0, e)
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass::new(*self, 0, 0, vec![0; self.b]).expect("length matches")
    }
}

/// `m zeta + d ell + sum exceptional[i] e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    pub m: i64,
    pub d: i64,
    pub exceptional: Vec<i64>,
    pub context: SurfaceContext,
}

impl DivisorClass {
    pub fn new(context: SurfaceContext, m: i64, d: i64, exceptional: Vec<i64>) -> Result<Self> {
        if exceptional.len() != context.b {
            return Err(Error::Parse(format!(
                "{} exceptional coefficients given for {} blow-ups",
                exceptional.len(),
                context.b
            )));
        }
        Ok(Self { m, d, exceptional, context })
    }

    pub fn intersect(&self, other: &Self) -> Result<i64> {
        intersect(self, other)
    }

    pub fn self_intersection(&self) -> i64 {
        intersect(self, self).expect("same context")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.context, other.context, "divisor classes on different surfaces");
        Self {
            m: f(self.m, other.m),
            d: f(self.d, other.d),
            exceptional: self.exceptional.iter().zip(&other.exceptional).map(|(a, b)| f(*a, *b)).collect(),
            context: self.context,
        }
    }
}

/// The intersection pairing. Classes must share a context.
pub fn intersect(a: &DivisorClass, c: &DivisorClass) -> Result<i64> {
    if a.context != c.context {
        return Err(Error::ContextMismatch);
    }
    let exc: i64 = a.exceptional.iter().zip(&c.exceptional).map(|(x, y)| x * y).sum();
    Ok(a.m * c.m * a.context.zeta_sq + a.m * c.d + a.d * c.m - exc)
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    /// Panics if the contexts differ.
    fn add(self, rhs: Self) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    /// Panics if the contexts differ.
    fn sub(self, rhs: Self) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        self.zip_with(self, |a, _| -a)
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.zip_with(rhs, |a, _| self * a)
    }
}

/// `K_B = -2 zeta + (2g - 2 + zeta^2) ell + sum e_i`.
///
/// Satisfies `K^2 = 8(1-g) - b` and `K.ell = -2` for every `zeta^2`.
pub fn canonical_class(ctx: SurfaceContext) -> DivisorClass {
    DivisorClass::new(ctx, -2, 2 * ctx.g - 2 + ctx.zeta_sq, vec![1; ctx.b]).expect("length matches")
}

/// `c_1(omega_B^-1 (x) L_M) = -K_B + deg(L_M) ell`.
pub fn fundamental_class(ctx: SurfaceContext, deg_lm: i64) -> DivisorClass {
    let k = canonical_class(ctx);
    &(-&k) + &(deg_lm * &ctx.ell())
}

/// Degrees of the fundamental class on the irreducible vertical curve
/// classes, plus its self-intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NefDegreeReport {
    pub on_ell: i64,
    /// `ell - e_i`, per `i`.
    pub on_ell_minus_e: Vec<i64>,
    pub on_e: Vec<i64>,
    /// `(i, j, degree on e_i - e_j)` for `i != j`.
    pub on_e_diff: Vec<(usize, usize, i64)>,
    pub self_intersection: i64,
    /// Test classes with negative degree, by name.
    pub negative: Vec<String>,
}

impl NefDegreeReport {
    pub fn vertical_nonnegative(&self) -> bool {
        self.negative.is_empty()
    }

    pub fn big(&self) -> bool {
        self.self_intersection > 0
    }
}

pub fn nef_degree_report(ctx: SurfaceContext, deg_lm: i64) -> NefDegreeReport {
    let l = fundamental_class(ctx, deg_lm);
    let deg = |c: &DivisorClass| intersect(&l, c).expect("same context");
    let ell = ctx.ell();
    let es: Vec<DivisorClass> = (0..ctx.b).map(|i| ctx.exceptional(i).expect("in range")).collect();

    let mut negative = Vec::new();
    let on_ell = deg(&ell);
    if on_ell < 0 {
        negative.push("l".to_string());
    }
    let on_ell_minus_e: Vec<i64> = es.iter().map(|e| deg(&(&ell - e))).collect();
    let on_e: Vec<i64> = es.iter().map(&deg).collect();
    let mut on_e_diff = Vec::new();
    for i in 0..ctx.b {
        if on_ell_minus_e[i] < 0 {
            negative.push(format!("l-e{}", i + 1));
        }
        if on_e[i] < 0 {
            negative.push(format!("e{}", i + 1));
        }
        for j in 0..ctx.b {
            if i != j {
                let v = deg(&(&es[i] - &es[j]));
                if v < 0 {
                    negative.push(format!("e{}-e{}", i + 1, j + 1));
                }
                on_e_diff.push((i, j, v));
            }
        }
    }
    NefDegreeReport { on_ell, on_ell_minus_e, on_e, on_e_diff, self_intersection: l.self_intersection(), negative }
}

/// Number of `A1` fibers from Riemann-Hurwitz on the discriminant curve
/// `Delta = 12 c_1(L)`, which maps with degree 24 to `M`:
/// `a_1 = Delta.(K_B + Delta) - 3 c_1(L^4).c_1(L^6) + 48(1-g)`.
///
/// Cusps cancel out of this expression, so they are not modelled.
pub fn a1_riemann_hurwitz(ctx: SurfaceContext, deg_lm: i64) -> i64 {
    let k = canonical_class(ctx);
    let l = fundamental_class(ctx, deg_lm);
    let disc = 12 * &l;
    let pair = |a: &DivisorClass, b: &DivisorClass| intersect(a, b).expect("same context");
    pair(&disc, &(&k + &disc)) - 3 * pair(&(4 * &l), &(6 * &l)) + 48 * (1 - ctx.g)
}

/// The same count written through `K_B` and `c_1(L_M)` only:
/// `60 K^2 - 132 K.c_1(L_M) + 48(1-g)`.
pub fn a1_from_canonical(ctx: SurfaceContext, deg_lm: i64) -> i64 {
    let k = canonical_class(ctx);
    let lm = deg_lm * &ctx.ell();
    60 * k.self_intersection() - 132 * intersect(&k, &lm).expect("same context") + 48 * (1 - ctx.g)
}

/// `vdim Mbar_g(B, beta) = k + g - 1` where `k = c_1(L).beta`; also the
/// geometric genus of the elliptic surfaces over the curves.
pub fn vdim_base(g: i64, k: i64) -> i64 {
    k + g - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_pairings() {
        let ctx = SurfaceContext::new(0, 1, 2);
        assert_eq!(intersect(&ctx.ell(), &ctx.ell()).unwrap(), 0);
        let e1 = ctx.exceptional(0).unwrap();
        assert_eq!(intersect(&e1, &e1).unwrap(), -1);
        assert_eq!(intersect(&ctx.zeta(), &ctx.ell()).unwrap(), 1);
        assert_eq!(intersect(&ctx.zeta(), &ctx.zeta()).unwrap(), 1);
        assert!(ctx.exceptional(2).is_err());
    }

    #[test]
    fn pairing_shape() {
        // (m zeta + d ell - sum m_i e_i).(2 zeta + l ell - sum e_i) = 2 m zeta^2 + 2d + m l - sum m_i
        let ctx = SurfaceContext::new(1, 3, 3);
        let test = DivisorClass::new(ctx, 4, 7, vec![-1, -2, -3]).unwrap();
        let lb = DivisorClass::new(ctx, 2, 11, vec![-1, -1, -1]).unwrap();
        assert_eq!(intersect(&test, &lb).unwrap(), 2 * 4 * 3 + 2 * 7 + 4 * 11 - 6);
        assert_eq!(intersect(&lb, &ctx.ell()).unwrap(), 2);
    }

    #[test]
    fn context_mismatch() {
        let a = SurfaceContext::new(0, 0, 1);
        let b = SurfaceContext::new(0, 0, 2);
        assert_eq!(intersect(&a.ell(), &b.ell()), Err(Error::ContextMismatch));
        assert!(DivisorClass::new(a, 0, 0, vec![]).is_err());
    }

    #[test]
    fn canonical_pins() {
        let k = canonical_class(SurfaceContext::new(0, 0, 0));
        assert_eq!(k.self_intersection(), 8);
        let ctx = SurfaceContext::new(1, 0, 3);
        assert_eq!(canonical_class(ctx).self_intersection(), -3);
        let ctx = SurfaceContext::new(0, 0, 0);
        assert_eq!(intersect(&canonical_class(ctx), &(7 * &ctx.ell())).unwrap(), -14);
    }

    #[test]
    fn fundamental_degrees() {
        let ctx = SurfaceContext::new(2, -1, 3);
        let l = fundamental_class(ctx, 9);
        let e = ctx.exceptional(1).unwrap();
        assert_eq!(intersect(&l, &ctx.ell()).unwrap(), 2);
        assert_eq!(intersect(&l, &e).unwrap(), 1);
        assert_eq!(intersect(&l, &(&ctx.ell() - &e)).unwrap(), 1);
    }

    #[test]
    fn nef_report() {
        let r = nef_degree_report(SurfaceContext::new(0, 0, 2), 10);
        assert!(r.vertical_nonnegative());
        assert!(r.on_e_diff.iter().all(|&(_, _, v)| v == 0));
        assert_eq!(r.self_intersection, 46);
        assert!(r.big());
    }

    #[test]
    fn a1_examples() {
        assert_eq!(a1_riemann_hurwitz(SurfaceContext::new(0, 0, 4), 10), 2928);
        for d in 0..10 {
            assert_eq!(a1_riemann_hurwitz(SurfaceContext::new(0, 1, 0), d), 264 * d + 528);
        }
    }

    #[test]
    fn vdim() {
        assert_eq!(vdim_base(0, 2), 1);
        assert_eq!(vdim_base(0, 1), 0);
        assert_eq!(vdim_base(1, 2), 2);
    }
}
