//! Gauss hypergeometric function `2F1(a, b; c; z)` on the cut plane
//! `C \ [1, ∞)`.
//!
//! The argument is moved towards the origin by composing the Pfaff
//! transformation `z -> z/(z-1)` with the `z -> 1-z` connection formula.
//! Compositions give the six classical arguments
//!
//! ```text
//! z, z/(z-1), 1-z, 1/(1-z), 1-1/z, 1/z
//! ```
//!
//! and the one with the smallest modulus is summed. When `c-a-b` is an
//! integer the connection formula degenerates and the logarithmic series is
//! used instead. Arguments that no available transform brings inside radius
//! 0.9 (around `e^{±iπ/3}`, or degenerate parameters) are reached by Taylor
//! continuation of the hypergeometric differential equation.

use super::gamma::{digamma, gamma, is_nonpositive_integer, rgamma};
use super::hypergeometric::{pfq, HypergeometricSpec, SeriesControl};
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Pfaff,
    Reflect,
}

const PATHS: [&[Step]; 6] = [
    &[],
    &[Step::Pfaff],
    &[Step::Reflect],
    &[Step::Pfaff, Step::Reflect],
    &[Step::Reflect, Step::Pfaff],
    &[Step::Pfaff, Step::Reflect, Step::Pfaff],
];

/// Largest perturbation of an integer `c-a-b` treated as exactly integral.
const INTEGER_SLACK: f64 = 1e-12;
/// Perturbations below this make the non-logarithmic formula ill-conditioned.
const NEAR_INTEGER: f64 = 1e-6;
/// Transformed arguments beyond this radius are reached by ODE continuation.
const CONTINUATION_RADIUS: f64 = 0.9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn one_minus_pow(z: Complex64, e: Complex64) -> Complex64 {
    if e == c(0.0) {
        return c(1.0);
    }
    ((1.0 - z).ln() * e).exp()
}

/// Gauss hypergeometric function with principal branch, cut along `[1, ∞)`.
pub fn gauss_2f1(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(cc) {
        return Err(Error::InvalidSpec(format!("lower parameter {cc} is a non-positive integer")));
    }
    if z == c(0.0) {
        return Ok(c(1.0));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return series(a, b, cc, z);
    }
    if is_nonpositive_integer(cc - a) || is_nonpositive_integer(cc - b) {
        // Euler transformation onto a polynomial
        return Ok(one_minus_pow(z, cc - a - b) * series(cc - a, cc - b, cc, z)?);
    }
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::BranchCut(z));
    }
    if z == c(1.0) {
        let s = cc - a - b;
        if s.re <= 0.0 {
            return Err(Error::NonConvergence {
                what: "2F1 at unit argument",
                limit: 0,
            });
        }
        return Ok(gamma(cc)? * gamma(s)? * rgamma(cc - a) * rgamma(cc - b));
    }
    match choose_path(a, b, cc, z) {
        Some(path) => eval_path(path, a, b, cc, z),
        None => continuation(a, b, cc, z),
    }
}

/// Real-parameter convenience wrapper returning the real part.
pub fn gauss_2f1_real(a: f64, b: f64, cc: f64, z: f64) -> Result<f64> {
    Ok(gauss_2f1(c(a), c(b), c(cc), c(z))?.re)
}

fn integer_defect(d: Complex64) -> (f64, i64) {
    let m = d.re.round();
    ((d - m).norm(), m as i64)
}

fn choose_path(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Option<&'static [Step]> {
    let real_unit = z.im == 0.0 && (0.0..1.0).contains(&z.re);
    let real_negative = z.im == 0.0 && z.re <= 0.0;
    let mut best: Option<(&'static [Step], f64)> = None;
    let mut fallback: Option<(&'static [Step], f64)> = None;
    for path in PATHS {
        let mut w = z;
        let (mut pa, mut pb, pc) = (a, b, cc);
        let mut ok = true;
        let mut fragile = false;
        for (i, step) in path.iter().enumerate() {
            match step {
                Step::Pfaff => {
                    pb = pc - pb;
                    w = w / (w - 1.0);
                }
                Step::Reflect => {
                    let (defect, _) = integer_defect(pc - pa - pb);
                    let last = i + 1 == path.len();
                    if defect <= INTEGER_SLACK && !last {
                        ok = false;
                    }
                    if defect > INTEGER_SLACK && defect < NEAR_INTEGER {
                        fragile = true;
                    }
                    // after a reflection the parameters change per term; the
                    // moduli are all that matter for the choice
                    pa = c(0.5);
                    pb = c(0.5);
                    w = 1.0 - w;
                }
            }
        }
        if path.first() == Some(&Step::Reflect) && real_negative {
            ok = false;
        }
        if path.len() >= 2 && path[0] == Step::Pfaff && real_unit {
            ok = false;
        }
        if !ok {
            continue;
        }
        let r = w.norm();
        let slot = if fragile { &mut fallback } else { &mut best };
        if slot.map_or(true, |(_, br)| r < br) {
            *slot = Some((path, r));
        }
    }
    match (best, fallback) {
        (Some((p, r)), _) if r < CONTINUATION_RADIUS => Some(p),
        (_, Some((q, rq))) if rq < CONTINUATION_RADIUS => Some(q),
        _ => None,
    }
}

fn eval_path(path: &[Step], a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return series(a, b, cc, z);
    }
    match path.split_first() {
        None => series(a, b, cc, z),
        Some((Step::Pfaff, rest)) => {
            let w = z / (z - 1.0);
            Ok(one_minus_pow(z, -a) * eval_path(rest, a, cc - b, cc, w)?)
        }
        Some((Step::Reflect, rest)) => reflect(a, b, cc, z, rest),
    }
}

fn series(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Result<Complex64> {
    let spec = HypergeometricSpec::new(vec![a, b], vec![cc], z)?;
    pfq(&spec, &SeriesControl::default())
}

/// `z -> 1-z` connection; `rest` is applied to the functions of `1-z`.
fn reflect(a: Complex64, b: Complex64, cc: Complex64, z: Complex64, rest: &[Step]) -> Result<Complex64> {
    let d = cc - a - b;
    let (defect, m) = integer_defect(d);
    if defect <= INTEGER_SLACK {
        return log_case(a, b, cc, z, m);
    }
    let u = 1.0 - z;
    let first = gamma(cc)? * gamma(d)? * rgamma(cc - a) * rgamma(cc - b) * eval_path(rest, a, b, 1.0 - d, u)?;
    let second = one_minus_pow(z, d)
        * gamma(cc)?
        * gamma(-d)?
        * rgamma(a)
        * rgamma(b)
        * eval_path(rest, cc - a, cc - b, 1.0 + d, u)?;
    Ok(first + second)
}

/// Logarithmic connection formula for `c - a - b = m` integral, `|1-z| < 1`.
fn log_case(a: Complex64, b: Complex64, cc: Complex64, z: Complex64, m: i64) -> Result<Complex64> {
    if m < 0 {
        // Euler transformation flips the sign of c-a-b
        let inner = log_case(cc - a, cc - b, cc, z, -m)?;
        return Ok(one_minus_pow(z, c(m as f64)) * inner);
    }
    let mu = m as u32;
    let mf = m as f64;
    let u = 1.0 - z;
    let ab_m = a + b + mf;
    let g_abm = gamma(ab_m)?;

    let mut finite_part = c(0.0);
    if mu > 0 {
        let mut term = c(1.0);
        let mut sum = c(0.0);
        for k in 0..mu {
            sum += term;
            let kf = k as f64;
            term = term * (a + kf) * (b + kf) / ((kf + 1.0) * (1.0 - mf + kf)) * u;
        }
        let gamma_m: f64 = (1..mu).map(|j| j as f64).product();
        finite_part = g_abm * gamma_m * rgamma(a + mf) * rgamma(b + mf) * sum;
    }

    let ln_u = u.ln();
    let euler = -digamma(c(1.0))?.re;
    // ψ(k+1), ψ(k+m+1), ψ(a+k+m), ψ(b+k+m), advanced by ψ(x+1) = ψ(x) + 1/x
    let mut psi_k1 = -euler;
    let mut psi_km1 = -euler + (1..=mu).map(|j| 1.0 / j as f64).sum::<f64>();
    let mut psi_a = digamma(a + mf)?;
    let mut psi_b = digamma(b + mf)?;
    let m_factorial: f64 = (1..=mu).map(|j| j as f64).product();
    let mut coef = c(1.0 / m_factorial);
    let mut sum = c(0.0);
    let mut small = 0;
    for k in 0..100_000usize {
        let kf = k as f64;
        let bracket = ln_u - psi_k1 - psi_km1 + psi_a + psi_b;
        let term = coef * bracket;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && kf > (a.norm() + b.norm() + mf) {
            small += 1;
            if small >= 2 {
                let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
                let pre = sign * u.powu(mu) * g_abm * rgamma(a) * rgamma(b);
                return Ok(finite_part - pre * sum);
            }
        } else {
            small = 0;
        }
        coef = coef * (a + mf + kf) * (b + mf + kf) / ((kf + 1.0) * (kf + mf + 1.0)) * u;
        psi_k1 += 1.0 / (kf + 1.0);
        psi_km1 += 1.0 / (kf + mf + 1.0);
        psi_a += (a + mf + kf).inv();
        psi_b += (b + mf + kf).inv();
    }
    Err(Error::NonConvergence {
        what: "logarithmic 2F1 series",
        limit: 100_000,
    })
}

/// Taylor continuation of the hypergeometric equation
/// `z(1-z)w'' + (c - (a+b+1)z)w' - ab w = 0` from `z/(2|z|)` to `z`, each
/// step at half the distance to the nearest of the singular points 0 and 1.
/// Segments passing close to 1 detour through `1 ± 0.6i` on the side of `z`.
fn continuation(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Result<Complex64> {
    let start = z * (0.5 / z.norm());
    let mut state = (
        start,
        series(a, b, cc, start)?,
        a * b / cc * series(a + 1.0, b + 1.0, cc + 1.0, start)?,
    );
    if distance_to_segment(c(1.0), start, z) < 0.3 {
        let side = if z.im < 0.0 { -1.0 } else { 1.0 };
        state = ode_segment(a, b, cc, state, Complex64::new(1.0, 0.6 * side))?;
    }
    Ok(ode_segment(a, b, cc, state, z)?.1)
}

fn distance_to_segment(p: Complex64, from: Complex64, to: Complex64) -> f64 {
    let d = to - from;
    let t = (((p - from) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (from + d * t - p).norm()
}

type OdeState = (Complex64, Complex64, Complex64);

fn ode_segment(a: Complex64, b: Complex64, cc: Complex64, state: OdeState, target: Complex64) -> Result<OdeState> {
    let (mut z0, mut w, mut dw) = state;
    let ab = a * b;
    let q1 = -(a + b + 1.0);
    for _ in 0..10_000 {
        let radius = z0.norm().min((1.0 - z0).norm());
        let d = target - z0;
        let last = d.norm() <= 0.5 * radius;
        let h = if last { d } else { d * (0.5 * radius / d.norm()) };
        let p0 = z0 * (1.0 - z0);
        let p1 = 1.0 - 2.0 * z0;
        let q0 = cc - (a + b + 1.0) * z0;
        let (mut c0, mut c1) = (w, dw);
        let mut value = c0 + c1 * h;
        let mut deriv = c1;
        // hp = h^(n+1)
        let mut hp = h;
        let mut small = 0;
        let mut n = 0usize;
        loop {
            let nf = n as f64;
            let c2 = -((p1 * nf + q0) * (nf + 1.0) * c1 + (-(nf * (nf - 1.0)) + q1 * nf - ab) * c0)
                / (p0 * ((nf + 2.0) * (nf + 1.0)));
            deriv += c2 * (nf + 2.0) * hp;
            hp *= h;
            let t = c2 * hp;
            value += t;
            if t.norm() <= 1e-17 * value.norm() {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            c0 = c1;
            c1 = c2;
            n += 1;
            if n > 2000 {
                return Err(Error::NonConvergence {
                    what: "2F1 Taylor continuation",
                    limit: 2000,
                });
            }
        }
        w = value;
        dw = deriv;
        z0 += h;
        if last {
            return Ok((z0, w, dw));
        }
    }
    Err(Error::NonConvergence {
        what: "2F1 Taylor continuation",
        limit: 10_000,
    })
}
