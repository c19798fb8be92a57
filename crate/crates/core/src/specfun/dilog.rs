//! Dilogarithm and the Bloch–Wigner function.
//!
//! `Li₂` is the principal branch with cut `[1, ∞)`; on the cut the limit from
//! the upper half-plane is returned. The core expansion is the Bernoulli
//! series in `u = -ln(1-z)`, reached through the inversion and reflection
//! identities.

use num_complex::Complex64;
use std::f64::consts::PI;

const PI2_6: f64 = PI * PI / 6.0;

/// `B_{2k} / (2k+1)!`, k = 1..20.
const BERNOULLI: [f64; 20] = [
    0.027777777777777776,
    -0.0002777777777777778,
    4.72411186696901e-06,
    -9.185773074661964e-08,
    1.8978869988971e-09,
    -4.0647616451442256e-11,
    8.921691020456452e-13,
    -1.9939295860721074e-14,
    4.518980029619918e-16,
    -1.0356517612181247e-17,
    2.395218621026187e-19,
    -5.581785874325009e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.315975652702203e-26,
    -1.740845657234001e-27,
    4.1576356446139e-29,
    -9.962148488284622e-31,
    2.3940344248961652e-32,
    -5.76834735536739e-34,
];

/// `Σ B_n u^{n+1}/(n+1)!`, which equals `Li₂(1 - e^{-u})`.
fn bernoulli_series(u: Complex64) -> Complex64 {
    let u2 = u * u;
    let mut acc = Complex64::new(0.0, 0.0);
    for &b in BERNOULLI.iter().rev() {
        acc = acc * u2 + b;
    }
    u - u2 * 0.25 + acc * u2 * u
}

/// Principal dilogarithm `Li₂(z)`.
pub fn dilog(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        let x = z.re;
        if x == 1.0 {
            return Complex64::new(PI2_6, 0.0);
        }
        if x > 1.0 {
            // Li₂(x + i0) = π²/3 - ln²x/2 - Li₂(1/x) + iπ ln x
            let l = x.ln();
            let re = PI * PI / 3.0 - 0.5 * l * l - dilog_inside(Complex64::new(1.0 / x, 0.0)).re;
            return Complex64::new(re, PI * l);
        }
    }
    if z.norm_sqr() > 1.0 {
        // Li₂(z) = -π²/6 - ln²(-z)/2 - Li₂(1/z)
        let l = (-z).ln();
        return -PI2_6 - 0.5 * l * l - dilog_inside(z.inv());
    }
    dilog_inside(z)
}

/// `Li₂` for `|z| <= 1`.
fn dilog_inside(z: Complex64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return z;
    }
    if z.re <= 0.5 {
        return bernoulli_series(-(1.0 - z).ln());
    }
    if z == Complex64::new(1.0, 0.0) {
        return Complex64::new(PI2_6, 0.0);
    }
    // reflection: Li₂(z) = π²/6 - ln z ln(1-z) - Li₂(1-z), with |1-z| <= 1
    let w = 1.0 - z;
    let reflected = if w.norm_sqr() <= 1.0 {
        bernoulli_series(-z.ln())
    } else {
        let l = (-w).ln();
        -PI2_6 - 0.5 * l * l - bernoulli_series(-(1.0 - w.inv()).ln())
    };
    PI2_6 - z.ln() * w.ln() - reflected
}

/// Bloch–Wigner dilogarithm `D(z) = Im Li₂(z) + arg(1-z) ln|z|`.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) || z.im == 0.0 {
        return 0.0;
    }
    dilog(z).im + (1.0 - z).arg() * z.norm().ln()
}
