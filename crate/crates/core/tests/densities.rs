use areal_mahler::densities::*;
use areal_mahler::quadrature::{integrate, EndpointRule, QuadratureSpec};
use areal_mahler::specfun::{gamma, gauss_2f1_real, pochhammer};
use areal_mahler::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn spec(rule: EndpointRule) -> QuadratureSpec {
    QuadratureSpec::new(1e-14, 1e-14, 4000, rule).unwrap()
}

fn c(n: i32, k: f64) -> f64 {
    coeff_c(CoefficientIndex::plain(n), k).unwrap()
}
fn d(n: i32, k: f64) -> f64 {
    coeff_d(CoefficientIndex::plain(n), k).unwrap()
}
fn cp(n: i32, k: f64) -> f64 {
    coeff_c(CoefficientIndex::primed(n), k).unwrap()
}
fn dp(n: i32, k: f64) -> f64 {
    coeff_d(CoefficientIndex::primed(n), k).unwrap()
}

#[test]
fn disk_walk_moments() {
    for n in 0..=4u32 {
        let r = integrate(|v| v.powi(2 * n as i32) * p_t1(v).unwrap(), 0.0, 2.0, &spec(EndpointRule::SqrtSingular)).unwrap();
        let expected = 4f64.powi(n as i32) * pochhammer(Complex64::new(1.5, 0.0), n).re
            / ((n as f64 + 1.0) * pochhammer(Complex64::new(3.0, 0.0), n).re);
        assert!((r.value - expected).abs() <= 1e-10, "n={n}: {} vs {expected}", r.value);
    }
}

#[test]
fn circle_walk_mellin_transform() {
    for s in [1.0, 2.0, 3.0] {
        let r = integrate(|v| v.powf(s) * p_s1(v).unwrap(), 0.0, 2.0, &spec(EndpointRule::SqrtSingular)).unwrap();
        let g = |x: f64| gamma(Complex64::new(x, 0.0)).unwrap().re;
        let expected = g(1.0 + s) / (g(1.0 + s / 2.0) * g(1.0 + s / 2.0));
        assert!((r.value - expected).abs() <= 1e-10, "s={s}");
    }
    let r = integrate(|v| p_s1(v).unwrap(), 0.0, 2.0, &spec(EndpointRule::SqrtSingular)).unwrap();
    assert!((r.value - 1.0).abs() < 1e-12);
}

fn conditional_moment(s: f64, v: f64, k: f64) -> f64 {
    let (lo, hi) = ((k - v).abs(), k + v);
    integrate(|u| u.powf(s) * p_cond(u, v, k).unwrap(), lo, hi, &spec(EndpointRule::SqrtSingular))
        .unwrap()
        .value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn conditional_density_normalizes(v in 0.01f64..2.0, k in 0.01f64..5.0) {
        prop_assume!((v - k).abs() > 1e-6);
        let total = conditional_moment(0.0, v, k);
        prop_assert!((total - 1.0).abs() <= 1e-10, "v={} k={} total={}", v, k, total);
    }
}

#[test]
fn conditional_second_moment() {
    // |k + v e^{iφ}|² averages to k² + v²
    assert!((conditional_moment(2.0, 1.0, 3.0) - 10.0).abs() < 1e-10);
    let via_series = 9.0 * gauss_2f1_real(-1.0, -1.0, 1.0, 1.0 / 9.0).unwrap();
    assert!((via_series - 10.0).abs() < 1e-14);
}

#[test]
fn torus_density_moments() {
    let total = integrate(|t| f_density(t).unwrap(), 0.0, 4.0, &spec(EndpointRule::LogSingular)).unwrap();
    assert!((total.value - 1.0).abs() < 1e-12);
    let second = integrate(|t| t * t * f_density(t).unwrap(), 0.0, 4.0, &spec(EndpointRule::LogSingular)).unwrap();
    assert!((second.value - 4.0).abs() < 1e-12);
    // the memoized moments at k = 0 reproduce the same values
    assert!((c(0, 0.0) - 1.0).abs() < 1e-12);
    assert!((c(1, 0.0) - 4.0).abs() < 1e-12);
}

#[test]
fn weight_derivative_identity() {
    // d/dm [2·2F1(1/2,-1/2;1;m) + 2(m-1)·2F1(1/2,1/2;1;m)] = 2F1(1/2,1/2;1;m)
    let m = 0.4;
    let h = 1e-5;
    let lhs_fn = |m: f64| {
        2.0 * gauss_2f1_real(0.5, -0.5, 1.0, m).unwrap() + 2.0 * (m - 1.0) * gauss_2f1_real(0.5, 0.5, 1.0, m).unwrap()
    };
    let derivative = (lhs_fn(m + h) - lhs_fn(m - h)) / (2.0 * h);
    assert!((derivative - gauss_2f1_real(0.5, 0.5, 1.0, m).unwrap()).abs() < 1e-9);
    // same identity in terms of F and G: t = 4√(1-m)
    let t = 4.0 * (1.0 - m).sqrt();
    assert!((f_density(t).unwrap() - gauss_2f1_real(0.5, 0.5, 1.0, m).unwrap() / (2.0 * PI)).abs() < 1e-15);
    assert!((g_density(t).unwrap() - gauss_2f1_real(0.5, -0.5, 1.0, m).unwrap() / (2.0 * PI)).abs() < 1e-15);
}

#[test]
fn c0_at_root_eight_matches_reference() {
    // reference from a 30-digit quadrature of the complete elliptic integral
    assert!((c(0, 8f64.sqrt()) - 0.202_093_841_042_094_51).abs() < 1e-13);
}

#[test]
fn y0_solves_its_differential_equation() {
    let h: f64 = 1e-3;
    for t in [1.0, 2.0, 3.0] {
        let y = |x: f64| y0(x).unwrap();
        let theta2 = (y(t * h.exp()) - 2.0 * y(t) + y(t * (-h).exp())) / (h * h);
        assert!((theta2 - t * f_density(t).unwrap()).abs() <= 1e-6, "t={t}");
        let theta1 = (y(t * h.exp()) - y(t * (-h).exp())) / (2.0 * h);
        assert!((theta1 - theta_y0(t).unwrap()).abs() <= 1e-6, "t={t}");
    }
    for i in 1..40 {
        assert!(y0(0.1 * i as f64).unwrap() >= 0.0);
    }
}

#[test]
fn disk_product_density_moments() {
    let total = integrate_p_u(|_| 1.0, 0.0, 4.0, 1e-13).unwrap();
    assert!((total - 1.0).abs() <= 1e-10, "{total}");
    let second = integrate_p_u(|t| t * t, 0.0, 4.0, 1e-13).unwrap();
    assert!((second - 2.25).abs() <= 1e-10, "{second}");
}

#[test]
fn integration_by_parts_relations() {
    for k in [0.5, 1.0, 2.0, 3.0] {
        let (fk, gk, lk) = (f_density(k).unwrap(), g_density(k).unwrap(), k.ln());
        for n in [1, 2] {
            let kk = k.powi(2 * n + 1);
            let m = (2 * n - 1) as f64;
            let r1 = c(n, k) / kk - (16.0 / (k * k) * gk - fk - m / kk * (c(n, k) - 16.0 * cp(n - 1, k)));
            let r2 = d(n, k) / kk
                - ((16.0 * cp(n - 1, k) - c(n, k)) / kk - m / kk * (d(n, k) - 16.0 * dp(n - 1, k))
                    + lk * (16.0 / (k * k) * gk - fk));
            let sum_c = c(n, k) + cp(n, k) - 32.0 * cp(n - 1, k);
            let r3 = cp(n, k) / kk - ((32.0 / (k * k) - 1.0) * gk / 3.0 - fk / 3.0 - m / (3.0 * kk) * sum_c);
            let sum_d = d(n, k) + dp(n, k) - 32.0 * dp(n - 1, k);
            let r4 = dp(n, k) / kk
                - (-sum_c / (3.0 * kk) - m / (3.0 * kk) * sum_d + lk / 3.0 * ((32.0 / (k * k) - 1.0) * gk - fk));
            for (i, r) in [r1, r2, r3, r4].into_iter().enumerate() {
                assert!(r.abs() <= 1e-9, "k={k} n={n} relation {i}: {r:e}");
            }
        }
    }
}

#[test]
fn linear_identities_among_moments() {
    for k in [0.5, 1.0, 2.0, 3.0] {
        let (fk, gk, lk) = (f_density(k).unwrap(), g_density(k).unwrap(), k.ln());
        let k3 = k.powi(3);
        let k5 = k.powi(5);
        let first = 20.0 / k * c(0, k) - 3.0 * (k * k + 12.0) / k3 * c(1, k) + 4.0 / k3 * c(2, k) + 8.0 / k * d(0, k)
            - 2.0 / k * d(1, k)
            + (8.0 - k * k) * lk * fk
            + 8.0 * lk * gk;
        let second = 120.0 / k3 * c(0, k) - 30.0 * (k * k + 12.0) / k5 * c(1, k) + 40.0 / k5 * c(2, k) - 5.0 * fk
            + 80.0 / (k * k) * gk;
        let third = 8.0 / k * c(0, k) - 2.0 / k * c(1, k) + (8.0 - k * k) * fk + 8.0 * gk;
        for (i, r) in [first, second, third].into_iter().enumerate() {
            assert!(r.abs() <= 1e-9, "k={k} identity {i}: {r:e}");
        }
    }
}
