use nlq_core::pipeline::{self, anomaly_check, gw_potential, phi, rx_series, GeometryInput};
use nlq_core::{BigInt, BigRational, Series};

fn divisor_sum(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(k)).sum()
}

// phi_n = 264 deg(lambda) sigma_9(n) - 60 b n sigma_7(n) for n >= 1
fn phi_by_divisor_sums(g: i64, d: i64, b: i64, prec: usize) -> Vec<BigInt> {
    let dl = d + 2 * (1 - g);
    let mut out = vec![BigInt::from(-dl)];
    for n in 1..prec as u64 {
        out.push(divisor_sum(9, n) * 264 * dl - divisor_sum(7, n) * 60 * b * n);
    }
    out
}

fn grid() -> Vec<GeometryInput> {
    let mut v = Vec::new();
    for g in [0, 1] {
        for d in [5, 10, 20] {
            for b in [0, 1, 4, 8] {
                v.push(GeometryInput::new(g, d, b, 12).unwrap());
            }
        }
    }
    v
}

#[test]
fn phi_matches_divisor_sums() {
    for inp in grid() {
        let (s, _) = phi(&inp).unwrap();
        let expect = phi_by_divisor_sums(inp.g, inp.deg_lm, inp.b as i64, 12);
        let got: Vec<BigInt> = s.coeffs().iter().map(|c| c.to_integer()).collect();
        assert!(s.coeffs().iter().all(|c| c.is_integer()));
        assert_eq!(got, expect, "{inp:?}");
    }
}

#[test]
fn q1_coefficient_counts_a1_fibers() {
    for inp in grid() {
        let (s, _) = phi(&inp).unwrap();
        let a1 = pipeline::a1_closed_form(inp.g, inp.deg_lm, inp.b);
        let dl = pipeline::hodge_degree(inp.g, inp.deg_lm);
        assert_eq!(s.coeff(1).unwrap(), &BigRational::from_integer(BigInt::from(a1)));
        assert_eq!(s.coeff(0).unwrap(), &BigRational::from_integer(BigInt::from(-dl)));
    }
}

#[test]
fn potential_through_k3_recurrence() {
    // q/Delta coefficients from n a_n = 24 sum sigma_1(k) a_{n-k}
    let prec = 12;
    let mut k3 = vec![BigInt::from(1)];
    for n in 1..prec {
        let s: BigInt = (1..=n).map(|k| divisor_sum(1, k as u64) * &k3[n - k]).sum();
        k3.push(s * 24 / n);
    }
    for inp in grid() {
        let p = phi_by_divisor_sums(inp.g, inp.deg_lm, inp.b as i64, prec);
        let f = gw_potential(&inp).unwrap();
        for n in 0..prec {
            let e: BigInt = (0..=n).map(|j| &p[j] * &k3[n - j]).sum();
            assert_eq!(f.coeff(n).unwrap(), &BigRational::from_integer(e));
        }
    }
}

#[test]
fn counts_are_integral_and_start_at_two() {
    for inp in grid() {
        let rx = rx_series(&inp).unwrap();
        assert_eq!(rx.len(), 12);
        assert_eq!(rx[0], BigInt::from(0));
        assert_eq!(rx[1], BigInt::from(0));
        assert!(anomaly_check(&inp).unwrap().ok);
    }
}

#[test]
fn report_serializes() {
    let inp = GeometryInput::new(0, 10, 8, 8).unwrap();
    let r = pipeline::run(&inp, 0).unwrap();
    assert!(r.all_ok());
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["c"], "-1");
    assert_eq!(v["phi_series"]["prec"], 8);
    assert_eq!(v["rx"][0], "0");
    let back: Series = serde_json::from_value(v["potential"].clone()).unwrap();
    assert_eq!(back, r.potential);
}
