//! Zeta Mahler functions: `Z(s, P) = ∫ |P|^s` over the torus, and its areal
//! analogue over the polydisk, for `x + k`, `x + y` and `x + y + k`.
//!
//! The derivative in `s` at `s = 0` recovers the corresponding Mahler
//! measure. The areal function of `x + y + k` continues meromorphically in
//! `s`; [`find_zeros`] locates its complex zeros.

use crate::densities::{p_cond, p_t1};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, integrate_complex, integrate_with_breaks, EndpointRule, QuadratureSpec};
use crate::specfun::{gamma_ratio, gauss_2f1, hyp, tan_pi};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_k(k: f64) -> Result<f64> {
    let k = k.abs();
    if k.is_finite() {
        Ok(k)
    } else {
        Err(domain(format!("family parameter must be finite, got {k}")))
    }
}

fn finite(z: Complex64, s: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Pole(s))
    }
}

/// Maps a lower hypergeometric parameter hitting a non-positive integer to a
/// pole of the zeta function at `s`.
fn series(upper: &[Complex64], lower: &[Complex64], z: Complex64, s: Complex64) -> Result<Complex64> {
    match hyp(upper, lower, z) {
        Err(Error::InvalidSpec(_)) => Err(Error::Pole(s)),
        other => other,
    }
}

/// `k^s` for `k > 0`.
fn real_power(k: f64, s: Complex64) -> Complex64 {
    (s * k.ln()).exp()
}

/// Odd integer within 0.1 of `s`, if it is at least `lowest`.
fn near_odd(s: Complex64, lowest: i64) -> Option<f64> {
    let n = 2.0 * ((s.re - 1.0) / 2.0).round() + 1.0;
    ((s - n).norm() < 0.1 && n >= lowest as f64).then_some(n)
}

const CAUCHY_RADIUS: f64 = 0.5;
const CAUCHY_NODES: usize = 64;

/// Value at `s` of a function analytic in the disk of radius 0.5 about
/// `center`, from its values on the boundary circle. Used across removable
/// singularities where the closed forms are products of a pole and a zero.
fn cauchy_value(f: impl Fn(Complex64) -> Result<Complex64>, center: f64, s: Complex64) -> Result<Complex64> {
    let mut acc = c(0.0);
    for j in 0..CAUCHY_NODES {
        let theta = TAU * (j as f64 + 0.5) / CAUCHY_NODES as f64;
        let offset = Complex64::from_polar(CAUCHY_RADIUS, theta);
        let w = center + offset;
        acc += f(w)? * offset / (w - s);
    }
    Ok(acc / CAUCHY_NODES as f64)
}

/// `Z(s, x + k)` over the unit circle. Only `|k|` matters.
pub fn z_x_plus_k(s: Complex64, k: f64) -> Result<Complex64> {
    let k = check_k(k)?;
    let half = -s / 2.0;
    if k == 1.0 {
        return finite(gamma_ratio(&[1.0 + s], &[1.0 + s / 2.0, 1.0 + s / 2.0])?, s);
    }
    if k < 1.0 {
        finite(gauss_2f1(half, half, c(1.0), c(k * k))?, s)
    } else {
        finite(real_power(k, s) * gauss_2f1(half, half, c(1.0), c(1.0 / (k * k)))?, s)
    }
}

/// `Z_𝔻(s, x + y)`.
pub fn zd_xy(s: Complex64) -> Result<Complex64> {
    if s == c(-4.0) {
        return Err(Error::Pole(s));
    }
    let ratio = gamma_ratio(&[2.0 + s], &[2.0 + s / 2.0, 2.0 + s / 2.0])?;
    finite(ratio * 4.0 / (s + 4.0), s)
}

/// `Z_𝔻(s, x + y + k)`: for `k ≤ 2` the combination of the two Frobenius
/// solutions regular at `k = 0`, and for `k > 2` the convergent series in
/// `4/k²`. The `k ≤ 2` form is used as the meromorphic continuation in `s`.
pub fn zd_xyk(s: Complex64, k: f64) -> Result<Complex64> {
    let k = check_k(k)?;
    if k > 2.0 {
        let h = -s / 2.0;
        return finite(real_power(k, s) * series(&[h, h, c(1.5)], &[c(2.0), c(3.0)], c(4.0 / (k * k)), s)?, s);
    }
    if k == 0.0 {
        return zd_xy(s);
    }
    match near_odd(s, -1) {
        Some(n) => cauchy_value(|w| zd_xyk_small(w, k), n, s),
        None => zd_xyk_small(s, k),
    }
}

fn zd_xyk_small(s: Complex64, k: f64) -> Result<Complex64> {
    let z = c(k * k / 4.0);
    let h = s / 2.0;
    let tan = tan_pi(h);
    let alpha0 = -Complex64::new(2.0, 0.0).powc(s + 2.0) * tan / PI
        * gamma_ratio(&[1.0 + h, 1.0 + h], &[(5.0 + s) / 2.0, (5.0 + s) / 2.0])?;
    let alpha1 = zd_xy(s)?;
    let lower = (5.0 + s) / 2.0;
    let f0 = series(&[c(-0.5), c(0.5), c(1.5)], &[lower, lower], z, s)?;
    let f1 = series(&[-2.0 - h, -1.0 - h, -h], &[c(1.0), -(1.0 + s) / 2.0], z, s)?;
    finite(alpha0 * real_power(k / 2.0, s + 3.0) * f0 + alpha1 * f1, s)
}

/// `Z(s, x + y + k)` over the 2-torus: the Frobenius combination for
/// `k ≤ 2` and `k^s ₃F₂(-s/2, -s/2, ½; 1, 1; 4/k²)` for `k > 2`.
pub fn z_xyk(s: Complex64, k: f64) -> Result<Complex64> {
    let k = check_k(k)?;
    if k > 2.0 {
        let h = -s / 2.0;
        return finite(real_power(k, s) * series(&[h, h, c(0.5)], &[c(1.0), c(1.0)], c(4.0 / (k * k)), s)?, s);
    }
    if k == 0.0 {
        return z_x_plus_k(s, 1.0);
    }
    match near_odd(s, 1) {
        Some(n) => cauchy_value(|w| z_xyk_small(w, k), n, s),
        None => z_xyk_small(s, k),
    }
}

fn z_xyk_small(s: Complex64, k: f64) -> Result<Complex64> {
    let z = c(k * k / 4.0);
    let h = s / 2.0;
    let ratio = gamma_ratio(&[1.0 + s], &[(1.0 + s) / 2.0, (3.0 + s) / 2.0])?;
    let beta0 = Complex64::new(2.0, 0.0).powc(-s) * tan_pi(h) * ratio * ratio;
    let beta1 = gamma_ratio(&[1.0 + s], &[1.0 + h, 1.0 + h])?;
    let lower = (3.0 + s) / 2.0;
    let g0 = series(&[c(0.5), c(0.5), c(0.5)], &[lower, lower], z, s)?;
    let g1 = series(&[-h, -h, -h], &[c(1.0), (1.0 - s) / 2.0], z, s)?;
    finite(beta0 * real_power(k / 2.0, s + 1.0) * g0 + beta1 * g1, s)
}

/// `Z_𝔻(s, x + y + k)` for real `s > -1` straight from its definition: the
/// `s`-th moment of `|X + Y + k|` integrated against the densities of
/// `|X + Y|` and of `|X + Y + k|` given `|X + Y|`.
pub fn zd_xyk_density(s: f64, k: f64) -> Result<f64> {
    let k = check_k(k)?;
    if !(s > -1.0 && s.is_finite()) {
        return Err(domain(format!("density route needs real s > -1, got {s}")));
    }
    if k == 0.0 {
        let spec = QuadratureSpec::new(1e-13, 1e-13, 4000, EndpointRule::SqrtSingular)?;
        return Ok(integrate(|v| v.powf(s) * p_t1(v).unwrap_or(f64::NAN), 0.0, 2.0, &spec)?.value);
    }
    let inner_spec = QuadratureSpec::new(1e-13, 1e-13, 4000, EndpointRule::SqrtSingular)?;
    let inner = |v: f64| -> f64 {
        if v <= 0.0 {
            return k.powf(s);
        }
        let (lo, hi) = ((k - v).abs(), k + v);
        match integrate(|u| u.powf(s) * p_cond(u, v, k).unwrap_or(f64::NAN), lo, hi, &inner_spec) {
            Ok(r) => r.value,
            Err(_) => f64::NAN,
        }
    };
    let outer_spec = QuadratureSpec::new(1e-10, 1e-10, 4000, EndpointRule::SqrtSingular)?;
    let breaks: Vec<f64> = if k < 2.0 { vec![k] } else { Vec::new() };
    let r = integrate_with_breaks(|v| p_t1(v).unwrap_or(f64::NAN) * inner(v), 0.0, 2.0, &breaks, &outer_spec)?;
    if !r.value.is_finite() {
        return Err(Error::NonFinite("density route integrand".into()));
    }
    Ok(r.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaFamily {
    /// `Z_𝔻(s, x + y)`; `k` is ignored.
    ArealXy,
    /// `Z_𝔻(s, x + y + k)`.
    ArealXyk,
    /// `Z(s, x + y + k)`.
    ClassicalXyk,
}

impl ZetaFamily {
    pub fn eval(self, s: Complex64, k: f64) -> Result<Complex64> {
        match self {
            ZetaFamily::ArealXy => zd_xy(s),
            ZetaFamily::ArealXyk => zd_xyk(s, k),
            ZetaFamily::ClassicalXyk => z_xyk(s, k),
        }
    }
}

const COMPLEX_STEP: f64 = 1e-20;
const CHECK_STEP: f64 = 1e-5;

/// `∂Z/∂s` at `s = 0` by complex-step differentiation, which is the Mahler
/// measure of the family. A second, larger step guards against a broken
/// evaluation path: the two must agree to `1e-7`.
pub fn mahler_from_derivative(which: ZetaFamily, k: f64) -> Result<f64> {
    let fine = which.eval(Complex64::new(0.0, COMPLEX_STEP), k)?.im / COMPLEX_STEP;
    let coarse = which.eval(Complex64::new(0.0, CHECK_STEP), k)?.im / CHECK_STEP;
    if !fine.is_finite() || (fine - coarse).abs() > 1e-7 {
        return Err(Error::NonConvergence {
            what: "complex-step derivative",
            limit: 2,
        });
    }
    Ok(fine)
}

/// The `k > 2` closed form continued to complex `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Continuation {
    /// `k^s ₃F₂(-s/2, -s/2, 3/2; 2, 3; 4/k²)`, for the areal function.
    Areal,
    /// `k^s ₃F₂(-s/2, -s/2, ½; 1, 1; 4/k²)`, for the classical function.
    Classical,
}

/// Evaluates the continuation at complex `k` off the segment `(0, 2]`.
///
/// Inside the unit disk of `4/k²` the series is summed; elsewhere the
/// `₃F₂` is written as a beta-weighted integral of a `₂F₁`, whose principal
/// branch is the continuation from `k > 2` through either half-plane.
pub fn continuation(kind: Continuation, s: Complex64, k: Complex64) -> Result<Complex64> {
    if k.norm() == 0.0 || (k.im == 0.0 && k.re > 0.0 && k.re <= 2.0) {
        return Err(Error::BranchCut(k));
    }
    let w = 4.0 / (k * k);
    let h = -s / 2.0;
    let (third, lower) = match kind {
        Continuation::Areal => (1.5, [2.0, 3.0]),
        Continuation::Classical => (0.5, [1.0, 1.0]),
    };
    let power = (s * k.ln()).exp();
    if w.norm() < 0.9 {
        return finite(power * hyp(&[h, h, c(third)], &[c(lower[0]), c(lower[1])], w)?, s);
    }
    // beta weight t^{third-1}(1-t)^{lower₁-third-1}, normalized
    let norm = gamma_ratio(&[c(lower[1])], &[c(third), c(lower[1] - third)])?;
    let spec = QuadratureSpec::new(1e-13, 1e-13, 4000, EndpointRule::SqrtSingular)?;
    let breaks: Vec<f64> = {
        let t = 1.0 / w.re;
        if w.re > 1.0 && t < 1.0 {
            vec![t]
        } else {
            Vec::new()
        }
    };
    let failed = std::cell::Cell::new(false);
    let r = integrate_complex(
        |t| {
            if t <= 0.0 || t >= 1.0 {
                return c(0.0);
            }
            let weight = t.powf(third - 1.0) * (1.0 - t).powf(lower[1] - third - 1.0);
            match gauss_2f1(h, h, c(lower[0]), w * t) {
                Ok(v) => v * weight,
                Err(_) => {
                    failed.set(true);
                    c(0.0)
                }
            }
        },
        0.0,
        1.0,
        &breaks,
        &spec,
    )?;
    if failed.get() {
        return Err(Error::BranchCut(k));
    }
    finite(power * norm * r.value, s)
}

/// Boundary value `lim_{ε→0⁺} continuation(k + iε)` for `0 < k ≤ 2`, by
/// Richardson extrapolation over `ε = 10⁻², 10⁻³, 10⁻⁴`.
pub fn boundary_value(kind: Continuation, s: f64, k: f64) -> Result<Complex64> {
    if !(k > 0.0 && k <= 2.0) {
        return Err(domain(format!("boundary value needs 0 < k <= 2, got {k}")));
    }
    let at = |eps: f64| continuation(kind, c(s), Complex64::new(k, eps));
    let (a, b, d) = (at(1e-2)?, at(1e-3)?, at(1e-4)?);
    let first = (b * 10.0 - a) / 9.0;
    let second = (d * 10.0 - b) / 9.0;
    Ok((second * 100.0 - first) / 99.0)
}

/// `Re 𝒢 - cot(πs/2) Im 𝒢` with `𝒢` the boundary value of the continuation,
/// for real `s > 0` that is not an odd integer. It reproduces the zeta
/// function of the family for `0 < k ≤ 2`.
pub fn reflection_value(kind: Continuation, s: f64, k: f64) -> Result<f64> {
    if !(s > 0.0) || near_odd(c(s), 1).is_some_and(|n| (s - n).abs() < 1e-12) {
        return Err(domain(format!("reflection formula needs real s > 0 not odd, got {s}")));
    }
    let g = boundary_value(kind, s, k)?;
    let cot = 1.0 / (PI * s / 2.0).tan();
    Ok(g.re - cot * g.im)
}

/// Residual of the third-order differential equation in `z = k²/4`
/// satisfied by the continuation, with derivatives from 7-point finite
/// differences of step `h`. Requires `z > 1` so the series converges.
pub fn ode_residual(kind: Continuation, s: f64, z: f64, h: f64) -> Result<f64> {
    if !(z - 3.0 * h > 1.0) {
        return Err(domain(format!("differential equation check needs z > 1, got {z}")));
    }
    let v = |x: f64| -> Result<f64> { Ok(continuation(kind, c(s), c((4.0 * x).sqrt()))?.re) };
    let p: Vec<f64> = (-3..=3).map(|j| v(z + j as f64 * h)).collect::<Result<_>>()?;
    let d1 = (-p[0] + 9.0 * p[1] - 45.0 * p[2] + 45.0 * p[4] - 9.0 * p[5] + p[6]) / (60.0 * h);
    let d2 = (2.0 * p[0] - 27.0 * p[1] + 270.0 * p[2] - 490.0 * p[3] + 270.0 * p[4] - 27.0 * p[5] + 2.0 * p[6])
        / (180.0 * h * h);
    let d3 = (p[0] - 8.0 * p[1] + 13.0 * p[2] - 13.0 * p[4] + 8.0 * p[5] - p[6]) / (8.0 * h * h * h);
    let value = p[3];
    let residual = match kind {
        Continuation::Areal => {
            s * (8.0 + 6.0 * s + s * s) * value - 2.0 * (2.0 + 3.0 * s * s * z + s * (2.0 + 6.0 * z)) * d1
                - 4.0 * z * (-3.0 + s - 3.0 * s * z) * d2
                - 8.0 * (z - 1.0) * z * z * d3
        }
        Continuation::Classical => {
            s.powi(3) * value - 2.0 * (3.0 * s * s * z + s * (2.0 - 6.0 * z) + 4.0 * z - 2.0) * d1
                - 4.0 * z * (-3.0 * s * z + s + 6.0 * z - 5.0) * d2
                + 8.0 * z * z * (1.0 - z) * d3
        }
    };
    Ok(residual)
}

/// Axis-aligned search rectangle in the `s`-plane, sampled with
/// `grid_density` points per unit length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub grid_density: usize,
}

impl ZeroBox {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, grid_density: usize) -> Result<Self> {
        let ok = [re_min, re_max, im_min, im_max].iter().all(|x| x.is_finite());
        if !ok || re_min >= re_max || im_min >= im_max || grid_density == 0 {
            return Err(domain("zero box needs finite, ordered bounds and a positive grid density"));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
            grid_density,
        })
    }

    pub fn contains(&self, s: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&s.re) && (self.im_min..=self.im_max).contains(&s.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub location: Complex64,
    /// `|Z_𝔻|` at the reported location.
    pub residual: f64,
    pub zero_box: ZeroBox,
}

/// Largest accepted `|Z_𝔻|` at a reported zero.
pub const ZERO_RESIDUAL: f64 = 1e-10;
const NEWTON_ITERATIONS: usize = 60;
const DIFF_STEP: f64 = 1e-6;

fn newton(f: &impl Fn(Complex64) -> Result<Complex64>, start: Complex64) -> Option<(Complex64, f64)> {
    let mut s = start;
    let mut value = f(s).ok()?;
    for _ in 0..NEWTON_ITERATIONS {
        let derivative = (f(s + DIFF_STEP).ok()? - f(s - DIFF_STEP).ok()?) / (2.0 * DIFF_STEP);
        if derivative.norm() == 0.0 {
            return None;
        }
        let mut step = value / derivative;
        // halve the step until |Z| decreases
        let mut next = s - step;
        let mut next_value = f(next).ok()?;
        let mut tries = 0;
        while next_value.norm() > value.norm() && tries < 30 {
            step /= 2.0;
            next = s - step;
            next_value = f(next).ok()?;
            tries += 1;
        }
        s = next;
        value = next_value;
        if step.norm() <= 1e-14 * s.norm().max(1.0) {
            break;
        }
    }
    let residual = value.norm();
    (residual <= ZERO_RESIDUAL).then_some((s, residual))
}

/// Winding number of `f` around the boundary of the box, from the total
/// change of argument along adaptively refined boundary samples.
pub fn winding_number(f: impl Fn(Complex64) -> Result<Complex64> + Sync, zbox: &ZeroBox) -> Result<i64> {
    let corners = [
        Complex64::new(zbox.re_min, zbox.im_min),
        Complex64::new(zbox.re_max, zbox.im_min),
        Complex64::new(zbox.re_max, zbox.im_max),
        Complex64::new(zbox.re_min, zbox.im_max),
    ];
    let mut total = 0.0;
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        let pieces = (((b - a).norm() * zbox.grid_density as f64).ceil() as usize).max(4);
        let points: Vec<Complex64> = (0..=pieces).map(|j| a + (b - a) * (j as f64 / pieces as f64)).collect();
        let values: Vec<Complex64> = points.par_iter().map(|&s| f(s)).collect::<Result<_>>()?;
        for j in 0..pieces {
            total += arg_change(&f, points[j], points[j + 1], values[j], values[j + 1], 0)?;
        }
    }
    let turns = total / TAU;
    if (turns - turns.round()).abs() > 0.05 {
        return Err(Error::NonConvergence {
            what: "argument principle winding",
            limit: 0,
        });
    }
    Ok(turns.round() as i64)
}

fn arg_change(
    f: &impl Fn(Complex64) -> Result<Complex64>,
    a: Complex64,
    b: Complex64,
    fa: Complex64,
    fb: Complex64,
    depth: usize,
) -> Result<f64> {
    if fa.norm() == 0.0 || fb.norm() == 0.0 {
        return Err(Error::RootFinding("zero on the search box boundary".into()));
    }
    let delta = (fb / fa).arg();
    if delta.abs() <= PI / 8.0 || depth >= 30 {
        return Ok(delta);
    }
    let mid = (a + b) / 2.0;
    let fm = f(mid)?;
    Ok(arg_change(f, a, mid, fa, fm, depth + 1)? + arg_change(f, mid, b, fm, fb, depth + 1)?)
}

/// Zeros of `s ↦ Z_𝔻(s, x + y + k)` inside the box.
///
/// Starting points are the local minima of `|Z_𝔻|` on the grid; each is
/// refined by Newton's method with a central-difference derivative. The
/// count is checked against the winding number of `Z_𝔻` on the box boundary,
/// and a mismatch is reported as [`Error::ZeroCount`].
pub fn find_zeros(zbox: &ZeroBox, k: f64) -> Result<Vec<ZeroRecord>> {
    let k = check_k(k)?;
    let f = |s: Complex64| zd_xyk(s, k);
    let density = zbox.grid_density as f64;
    let nx = ((zbox.re_max - zbox.re_min) * density).ceil() as usize + 1;
    let ny = ((zbox.im_max - zbox.im_min) * density).ceil() as usize + 1;
    let node = |i: usize, j: usize| {
        Complex64::new(
            zbox.re_min + (zbox.re_max - zbox.re_min) * i as f64 / (nx - 1) as f64,
            zbox.im_min + (zbox.im_max - zbox.im_min) * j as f64 / (ny - 1) as f64,
        )
    };
    let grid: Vec<Vec<f64>> = (0..ny)
        .into_par_iter()
        .map(|j| (0..nx).map(|i| f(node(i, j)).map_or(f64::INFINITY, |v| v.norm())).collect())
        .collect();
    let mut starts = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let here = grid[j][i];
            let mut is_min = here.is_finite();
            for (dj, di) in [(-1i64, 0i64), (1, 0), (0, -1), (0, 1), (-1, -1), (-1, 1), (1, -1), (1, 1)] {
                let (jj, ii) = (j as i64 + dj, i as i64 + di);
                if jj >= 0 && ii >= 0 && (jj as usize) < ny && (ii as usize) < nx && grid[jj as usize][ii as usize] < here {
                    is_min = false;
                }
            }
            if is_min {
                starts.push(node(i, j));
            }
        }
    }
    let refined: Vec<Option<(Complex64, f64)>> = starts.par_iter().map(|&s| newton(&f, s)).collect();
    let mut zeros: Vec<ZeroRecord> = Vec::new();
    for (location, residual) in refined.into_iter().flatten() {
        if zbox.contains(location) && zeros.iter().all(|z| (z.location - location).norm() > 1e-8) {
            zeros.push(ZeroRecord {
                location,
                residual,
                zero_box: *zbox,
            });
        }
    }
    zeros.sort_by(|a, b| a.location.im.total_cmp(&b.location.im).then(a.location.re.total_cmp(&b.location.re)));
    let winding = winding_number(f, zbox)?;
    if winding != zeros.len() as i64 {
        return Err(Error::ZeroCount {
            winding,
            found: zeros.len(),
        });
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_values() {
        assert!((z_x_plus_k(c(2.0), 1.0).unwrap() - 2.0).norm() < 1e-14);
        assert!((z_x_plus_k(c(2.0), 3.0).unwrap() - 10.0).norm() < 1e-13);
        assert!((z_x_plus_k(c(1.3), 0.0).unwrap() - 1.0).norm() < 1e-15);
        assert!((zd_xy(c(0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((zd_xy(c(2.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!(zd_xy(c(-4.0)).is_err());
    }

    #[test]
    fn cauchy_value_reproduces_analytic_functions() {
        let f = |w: Complex64| Ok(w.exp() * (w * w + 1.0));
        let s = Complex64::new(1.03, -0.02);
        assert!((cauchy_value(f, 1.0, s).unwrap() - f(s).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn box_validation() {
        assert!(ZeroBox::new(0.0, 0.0, 1.0, 2.0, 5).is_err());
        assert!(ZeroBox::new(0.0, 1.0, 1.0, 2.0, 0).is_err());
        assert!(ZeroBox::new(0.0, 1.0, 1.0, 2.0, 5).unwrap().contains(Complex64::new(0.5, 1.5)));
    }
}
