use nlq_core::lattice::{enumerate_by_norm, theta_series, weighted_theta};
use nlq_core::modforms::{monomials, qm_decompose, qm_expand, Monomial};
use nlq_core::pipeline::{a1_closed_form, hodge_degree};
use nlq_core::qseries::{mul, product_expand};
use nlq_core::surfgeom::{a1_from_canonical, a1_riemann_hurwitz, canonical_class, fundamental_class, intersect};
use nlq_core::{BigRational, DivisorClass, NamedLattice, QmPoly, Series, SurfaceContext};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

fn series(prec: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(rational(), prec).prop_map(|c| Series::new(c).unwrap())
}

fn unit_series(prec: usize) -> impl Strategy<Value = Series> {
    (series(prec), (1i64..=9, 1i64..=5), any::<bool>()).prop_map(|(s, (n, d), neg)| {
        let mut c = s.into_coeffs();
        c[0] = if neg { q(-n, d) } else { q(n, d) };
        Series::new(c).unwrap()
    })
}

fn weight10_poly() -> impl Strategy<Value = QmPoly> {
    let ms = monomials(10).unwrap();
    prop::collection::vec(rational(), ms.len())
        .prop_map(move |cs| QmPoly::from_terms(10, ms.iter().copied().zip(cs)).unwrap())
}

fn class(ctx: SurfaceContext) -> impl Strategy<Value = DivisorClass> {
    (-6i64..=6, -6i64..=6, prop::collection::vec(-4i64..=4, ctx.b))
        .prop_map(move |(m, d, e)| DivisorClass::new(ctx, m, d, e).unwrap())
}

fn context() -> impl Strategy<Value = SurfaceContext> {
    (0i64..=3, -3i64..=3, 0usize..=6).prop_map(|(g, z, b)| SurfaceContext::new(g, z, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_commutes(a in series(8), b in series(8)) {
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
    }

    #[test]
    fn mul_associates(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
    }

    #[test]
    fn mul_distributes(a in series(7), b in series(7), c in series(7)) {
        prop_assert_eq!(mul(&a, &(&b + &c)), &mul(&a, &b) + &mul(&a, &c));
    }

    #[test]
    fn precision_is_minimum(a in series(5), b in series(9)) {
        prop_assert_eq!(mul(&a, &b).prec(), 5);
        prop_assert_eq!((&a + &b).prec(), 5);
    }

    #[test]
    fn invert_round_trip(u in unit_series(8)) {
        let inv = u.invert().unwrap();
        prop_assert_eq!(mul(&u, &inv), Series::one(8));
        prop_assert_eq!(inv.invert().unwrap(), u);
    }

    #[test]
    fn derivative_is_leibniz(a in series(8), b in series(8)) {
        let lhs = mul(&a, &b).q_derive();
        let rhs = &mul(&a.q_derive(), &b) + &mul(&a, &b.q_derive());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_expand_opposite_exponents_cancel(ex in prop::collection::vec(-3i64..=3, 12)) {
        let pos: Series = product_expand(|n| ex[n], 0, 12).unwrap();
        let neg: Series = product_expand(|n| -ex[n], 0, 12).unwrap();
        prop_assert_eq!(mul(&pos, &neg), Series::one(12));
    }

    #[test]
    fn decompose_inverts_expand(p in weight10_poly()) {
        let s = qm_expand(&p, 12).unwrap();
        prop_assert_eq!(qm_decompose(&s, 10, 12).unwrap(), p);
    }

    #[test]
    fn anomaly_derivative_is_linear(a in weight10_poly(), b in weight10_poly(), c in rational()) {
        let lhs = a.scale(&c).add(&b).unwrap().anomaly_derivative();
        let rhs = a.anomaly_derivative().scale(&c).add(&b.anomaly_derivative()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn anomaly_derivative_kills_modular(c4 in rational(), c6 in rational()) {
        let p = QmPoly::from_terms(12, [(Monomial::new(0, 3, 0), c4), (Monomial::new(0, 0, 2), c6)]).unwrap();
        prop_assert!(p.anomaly_derivative().is_zero());
    }

    #[test]
    fn intersection_symmetric_bilinear(
        (x, y, z) in context().prop_flat_map(|ctx| (class(ctx), class(ctx), class(ctx))),
        k in -5i64..=5,
    ) {
        let xy = intersect(&x, &y).unwrap();
        prop_assert_eq!(xy, intersect(&y, &x).unwrap());
        let lhs = intersect(&(&(k * &x) + &y), &z).unwrap();
        prop_assert_eq!(lhs, k * intersect(&x, &z).unwrap() + intersect(&y, &z).unwrap());
    }

    #[test]
    fn a1_routes_agree(ctx in context(), d in -5i64..=25) {
        let closed = a1_closed_form(ctx.g, d, ctx.b);
        prop_assert_eq!(a1_riemann_hurwitz(ctx, d), closed);
        prop_assert_eq!(a1_from_canonical(ctx, d), closed);
    }
}

#[test]
fn canonical_pins_on_grid() {
    for g in 0..=2 {
        for b in 0..=6 {
            for z in -2..=2 {
                let ctx = SurfaceContext::new(g, z, b);
                let k = canonical_class(ctx);
                assert_eq!(k.self_intersection(), 8 * (1 - g) - b as i64);
                assert_eq!(intersect(&k, &ctx.ell()).unwrap(), -2);
                for d in 0..=20 {
                    let l = fundamental_class(ctx, d);
                    // L.ell = 2 on every fiber, L^2 grows with deg L_M
                    assert_eq!(intersect(&l, &ctx.ell()).unwrap(), 2);
                    assert_eq!(
                        l.self_intersection(),
                        k.self_intersection() - 2 * d * intersect(&k, &ctx.ell()).unwrap()
                    );
                    assert_eq!(hodge_degree(g, d), d + 2 * (1 - g));
                }
            }
        }
    }
}

fn random_unimodular(rng: &mut impl rand::Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-1..=1);
        for row in m.iter_mut() {
            row[j] += c * row[i];
        }
    }
    m
}

#[test]
fn enumeration_is_basis_independent() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let e8 = NamedLattice::E8.lattice();
    let base = enumerate_by_norm(&e8, 6).unwrap();
    for _ in 0..5 {
        let b = random_unimodular(&mut rng, 8);
        let moved = e8.change_basis(&b).unwrap();
        assert!(moved.is_unimodular());
        assert_eq!(enumerate_by_norm(&moved, 6).unwrap(), base);
    }
}

#[test]
fn weighted_theta_is_twice_derivative() {
    for l in [NamedLattice::A1, NamedLattice::E8] {
        let lat = l.lattice();
        let th: Series = theta_series(&lat, 6).unwrap();
        let w: Series = weighted_theta(&lat, 6).unwrap();
        assert_eq!(w, th.q_derive().scale(&q(2, 1)));
    }
}
