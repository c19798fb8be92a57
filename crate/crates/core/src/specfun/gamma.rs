//! Gamma, reciprocal Gamma, digamma and Pochhammer symbols for complex
//! arguments.
//!
//! The logarithm of Γ is evaluated with the Stirling series after shifting
//! the argument to `|z| >= 12`; the left half-plane is reached by the
//! reflection formula. The imaginary part of [`log_gamma`] is only defined
//! modulo `2π`; exponentiate it rather than comparing branches.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const STIRLING_RADIUS: f64 = 12.0;

/// `B_{2k} / (2k (2k-1))`, k = 1..11.
const STIRLING: [f64; 11] = [
    0.08333333333333333,
    -0.002777777777777778,
    0.0007936507936507937,
    -0.0005952380952380953,
    0.0008417508417508417,
    -0.0019175269175269176,
    0.00641025641025641,
    -0.029550653594771242,
    0.17964437236883057,
    -1.3924322169059011,
    13.402864044168393,
];

/// `B_{2k} / (2k)`, k = 1..11.
const DIGAMMA_ASYMPTOTIC: [f64; 11] = [
    0.08333333333333333,
    -0.008333333333333333,
    0.003968253968253968,
    -0.004166666666666667,
    0.007575757575757576,
    -0.021092796092796094,
    0.08333333333333333,
    -0.4432598039215686,
    3.0539543302701198,
    -26.456212121212122,
    281.46014492753625,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// True when `z` is exactly a non-positive integer. Nearby points are
/// evaluated as they are, so complex-step perturbations survive.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn stirling_ln_gamma(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < STIRLING_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series - shift
}

/// `ln(sin(πz))` without overflow for large `|Im z|`.
pub(crate) fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    if w.im.abs() < 20.0 {
        return w.sin().ln();
    }
    let i = Complex64::i();
    if w.im > 0.0 {
        -i * w + Complex64::new(0.0, 0.5).ln() + (1.0 - (i * w * 2.0).exp()).ln()
    } else {
        i * w + Complex64::new(0.0, -0.5).ln() + (1.0 - (-i * w * 2.0).exp()).ln()
    }
}

/// `cot(πz)`; far from the real axis it goes through `exp(±2πiz)` so it
/// stays finite.
pub fn cot_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let w = z * PI;
    if w.im.abs() < 20.0 {
        return w.tan().inv();
    }
    if w.im >= 0.0 {
        let q = (i * w * 2.0).exp();
        i * (q + 1.0) / (q - 1.0)
    } else {
        let q = (-i * w * 2.0).exp();
        i * (1.0 + q) / (1.0 - q)
    }
}

/// `tan(πz)`, the reciprocal of [`cot_pi`].
pub fn tan_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let w = z * PI;
    if w.im.abs() < 20.0 {
        return w.tan();
    }
    if w.im >= 0.0 {
        let q = (i * w * 2.0).exp();
        -i * (q - 1.0) / (q + 1.0)
    } else {
        let q = (-i * w * 2.0).exp();
        -i * (1.0 - q) / (1.0 + q)
    }
}

/// A logarithm of Γ(z).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    Ok(log_gamma_unchecked(z))
}

fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - stirling_ln_gamma(1.0 - z)
    } else {
        stirling_ln_gamma(z)
    }
}

/// Γ(z) for complex `z`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.im == 0.0 && z.re == z.re.round() && z.re <= 23.0 {
        // exact factorials
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z.re {
            f *= k;
            k += 1.0;
        }
        return Ok(Complex64::new(f, 0.0));
    }
    Ok(log_gamma_unchecked(z).exp())
}

/// 1/Γ(z), an entire function; exactly zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π, finite across the poles.
        if z.im.abs() < 20.0 / PI {
            return (z * PI).sin() * stirling_ln_gamma(1.0 - z).exp() / PI;
        }
        return (ln_sin_pi(z) + stirling_ln_gamma(1.0 - z)).exp() / PI;
    }
    (-stirling_ln_gamma(z)).exp()
}

/// Digamma ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        return Ok(digamma_right(1.0 - z) - cot_pi(z) * PI);
    }
    Ok(digamma_right(z))
}

fn digamma_right(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < STIRLING_RADIUS {
        shift += w.inv();
        w += 1.0;
    }
    let inv2 = (w * w).inv();
    let mut pow = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for c in DIGAMMA_ASYMPTOTIC {
        series += pow * c;
        pow *= inv2;
    }
    w.ln() - 0.5 / w - series - shift
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (a + j as f64))
}

/// Ratio of Gamma products `Π Γ(num) / Π Γ(den)` evaluated in the log domain.
///
/// Numerator poles are reported as errors; denominator poles make the ratio
/// vanish.
pub fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    if den.iter().any(|&d| is_nonpositive_integer(d)) {
        for &n in num {
            if is_nonpositive_integer(n) {
                return Err(Error::Pole(n));
            }
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &n in num {
        acc += log_gamma(n)?;
    }
    for &d in den {
        acc -= log_gamma_unchecked(d);
    }
    Ok(acc.exp())
}
