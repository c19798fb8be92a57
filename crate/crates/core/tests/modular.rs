use areal_mahler::densities::{coeff_c, CoefficientIndex};
use areal_mahler::modular::*;
use areal_mahler::specfun::gamma;
use areal_mahler::Complex64;
use std::f64::consts::PI;

fn gamma_quarter() -> f64 {
    gamma(Complex64::new(0.25, 0.0)).unwrap().re
}

#[test]
fn eta_special_values() {
    let g = gamma_quarter();
    let pi34 = PI.powf(0.75);
    let cases = [(0.5, 2f64.powf(7.0 / 8.0)), (1.0, 2.0), (2.0, 2f64.powf(11.0 / 8.0))];
    for (y, denom) in cases {
        let v = eta(Complex64::new(0.0, y)).unwrap();
        let expected = g / (denom * pi34);
        assert!((v.re - expected).abs() <= 1e-12 && v.im.abs() <= 1e-15, "τ={y}i: {v} vs {expected}");
    }
    assert!((eta(Complex64::new(0.0, 1.0)).unwrap().re - 0.768_225_422_3).abs() < 1e-10);
}

#[test]
fn eta_functional_equation() {
    for x in [0.3f64, 0.7, 2.5] {
        let a = eta(Complex64::new(0.0, x)).unwrap() * x.sqrt();
        let b = eta(Complex64::new(0.0, 1.0 / x)).unwrap();
        assert!((a - b).norm() <= 1e-12, "x={x}");
    }
}

#[test]
fn hauptmodul_values() {
    let v = x_of_tau(Complex64::new(0.0, 0.25)).unwrap();
    assert!((v.re - 8f64.sqrt()).abs() <= 1e-12 && v.im.abs() <= 1e-13, "{v}");

    // leading q-expansion at q = 0.01
    let tau = Complex64::new(0.0, -(0.01f64).ln() / (2.0 * PI));
    let q = 0.01f64;
    let series = 16.0 * q - 64.0 * q.powi(3) + 224.0 * q.powi(5) - 640.0 * q.powi(7) + 1616.0 * q.powi(9);
    assert!((x_of_tau(tau).unwrap().re - series).abs() <= 1e-12);

    assert!(x_of_tau(Complex64::new(0.0, 40.0)).unwrap().norm() < 1e-100);
    // monotone from 0 to 4 along the imaginary axis
    let mut last = 0.0;
    for i in 1..60 {
        let t = 0.05 * i as f64;
        let v = x_of_tau(Complex64::new(0.0, 0.25 / t)).unwrap().re;
        assert!(v > last && v < 4.0, "t={t}: {v}");
        last = v;
    }
}

#[test]
fn derivative_quotient() {
    let tau = Complex64::new(0.0, 0.3);
    let h = 1e-5;
    let fd = (x_of_tau(tau + h).unwrap() - x_of_tau(tau - h).unwrap()) / (2.0 * h);
    let exact = x_derivative(tau).unwrap();
    assert!((fd - exact).norm() <= 1e-6, "{fd} vs {exact}");
    let tau = Complex64::new(0.1, 0.8);
    let fd = (x_of_tau(tau + h).unwrap() - x_of_tau(tau - h).unwrap()) / (2.0 * h);
    assert!((fd - x_derivative(tau).unwrap()).norm() <= 1e-6);
}

#[test]
fn inversion() {
    let pt = solve_tk(8f64.sqrt()).unwrap();
    assert!((pt.t_k - 1.0).abs() <= 1e-10, "{}", pt.t_k);
    assert!((pt.q_k - (-PI).exp()).abs() <= 1e-12);
    // reference roots of t ↦ x(i/(4t)) - k from a 30-digit solver
    let reference = [(1.0, 0.569_841_051_991_918_684), (2.0, 0.781_700_961_348_055_753), (3.0, 1.059_035_979_444_174_012)];
    for (k, t) in reference {
        let pt = solve_tk(k).unwrap();
        assert!((pt.t_k - t).abs() <= 1e-11, "k={k}: {}", pt.t_k);
        let back = x_of_tau(Complex64::new(0.0, 0.25 / pt.t_k)).unwrap().re;
        assert!((back - k).abs() <= 1e-12);
    }
    // t_k grows as k approaches 4 and shrinks toward 0 as k approaches 0
    let ladder: Vec<f64> = [0.01, 0.5, 1.5, 3.5, 3.99, 3.9999].iter().map(|&k| solve_tk(k).unwrap().t_k).collect();
    assert!(ladder.windows(2).all(|w| w[0] < w[1]), "{ladder:?}");
    // x ≈ 16q for small q, so t_k ≈ π / (2 log(16/k))
    assert!((ladder[0] - PI / (2.0 * 1600f64.ln())).abs() < 1e-6, "{}", ladder[0]);
    for bad in [0.0, 4.0, -1.0, f64::NAN] {
        assert!(solve_tk(bad).is_err());
    }
}

#[test]
fn cycle_volume_three_ways() {
    for k in [1.0, 2.0, 8f64.sqrt()] {
        let quad = coeff_c(CoefficientIndex::plain(0), k).unwrap();
        let pt = solve_tk(k).unwrap();
        let series = c0_qseries(&pt, default_terms(pt.q_k)).unwrap();
        assert!(!series.is_truncated());
        assert!((series.value - quad).abs() <= 1e-10, "k={k}: {} vs {quad}", series.value);
        let lattice = c0_lattice(&pt, LatticeCutoff::new(200).unwrap());
        assert!((lattice.corrected.re - series.value).abs() <= 1e-4, "k={k}");
        assert!((lattice.raw.re - series.value).abs() <= 1e-2, "k={k}");
    }
}

#[test]
fn qseries_structure() {
    // small q: only the leading 16q/π survives
    let pt = ModularPoint { k: 0.0, t_k: 10.0, q_k: (-10.0 * PI).exp() };
    let v = c0_qseries(&pt, 20).unwrap().value;
    assert!((v / (16.0 * pt.q_k / PI) - 1.0).abs() < 1e-12);
    // too few terms is flagged
    let pt = solve_tk(2.0).unwrap();
    assert!(c0_qseries(&pt, 5).unwrap().is_truncated());
    assert!(c0_qseries(&pt, 0).is_err());
}

#[test]
fn lattice_sum_is_real_and_converges() {
    let pt = solve_tk(8f64.sqrt()).unwrap();
    let target = c0_qseries(&pt, 40).unwrap().value;
    let mut last = f64::INFINITY;
    for cutoff in [50, 100, 200] {
        let l = c0_lattice(&pt, LatticeCutoff::new(cutoff).unwrap());
        // the (m, n) and (m, -n) terms are complex conjugates when τ is imaginary
        assert!(l.raw.im.abs() <= 1e-14 && l.corrected.im.abs() <= 1e-14);
        let err = (l.raw.re - target).abs();
        assert!(err < last, "cutoff {cutoff}: {err}");
        last = err;
    }
}

#[test]
fn eisenstein_coefficients_match_eta_quotient() {
    let a = eisenstein_coeffs(50);
    assert_eq!(a, eta_quotient_coeffs(50));
    assert_eq!(&a[..9], &[1, -4, 8, -16, 26, -32, 48, -64, 73]);
    // n = 2: (-1)²(1·(-1)²·χ(2) + 4·(-1)¹·χ(1)) = -4
    assert_eq!(a[1], -4);
}
