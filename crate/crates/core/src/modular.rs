//! Dedekind eta, the level-8 eta quotient `x(τ)`, its inversion on the
//! imaginary axis, and two modular evaluations of the cycle volume `c₀(k)`:
//! a Lambert-type q-series and a doubly infinite lattice sum.

use crate::error::{domain, Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Factors `1 - qⁿ` closer to 1 than this end the product.
const PRODUCT_CUTOFF: f64 = 1e-18;

/// Tail bound above which a truncated q-series is flagged.
pub const QSERIES_TAIL_TOL: f64 = 1e-12;

fn check_upper(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 && tau.re.is_finite() && tau.im.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("τ must lie in the upper half-plane, got {tau}")))
    }
}

/// `∏_{n≥1} (1 - qⁿ)` for `|q| < 1`.
fn euler_product(q: Complex64) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = q;
    while qn.norm() >= PRODUCT_CUTOFF {
        prod *= 1.0 - qn;
        qn *= q;
    }
    prod
}

fn nome(tau: Complex64) -> Complex64 {
    (2.0 * PI * I * tau).exp()
}

/// Dedekind eta `η(τ) = e^{πiτ/12} ∏ (1 - e^{2πinτ})`.
///
/// The argument is first moved into the standard fundamental domain with
/// `η(τ + 1) = e^{πi/12} η(τ)` and `η(-1/τ) = √(-iτ) η(τ)`, so the product
/// always runs with `|q| ≤ e^{-π√3}`.
pub fn eta(tau: Complex64) -> Result<Complex64> {
    check_upper(tau)?;
    let mut t = tau;
    let mut factor = Complex64::new(1.0, 0.0);
    for _ in 0..10_000 {
        let shift = t.re.round();
        t.re -= shift;
        factor *= (PI * I * shift / 12.0).exp();
        if t.norm_sqr() >= 1.0 - 1e-15 {
            let value = factor * (PI * I * t / 12.0).exp() * euler_product(nome(t));
            return crate::error::finite(value, "eta");
        }
        factor /= (-I * t).sqrt();
        t = -t.inv();
    }
    Err(Error::NonConvergence { what: "eta argument reduction", limit: 10_000 })
}

/// `x(τ) = 16 (η(2τ) η(8τ)² / η(4τ)³)⁴ = 16q - 64q³ + 224q⁵ - …`.
pub fn x_of_tau(tau: Complex64) -> Result<Complex64> {
    check_upper(tau)?;
    if tau.im >= 0.5 {
        // the prefactors combine to exactly q, so work with the products
        let q = nome(tau);
        let ratio = euler_product(q * q) * euler_product(q.powi(8)).powi(2) / euler_product(q.powi(4)).powi(3);
        return crate::error::finite(16.0 * q * ratio.powi(4), "x(τ)");
    }
    let ratio = eta(2.0 * tau)? * eta(8.0 * tau)?.powi(2) / eta(4.0 * tau)?.powi(3);
    crate::error::finite(16.0 * ratio.powi(4), "x(τ)")
}

/// `dx/dτ = 2πi · 16 (η(2τ)³ η(8τ)² / η(4τ)⁴)⁴`.
pub fn x_derivative(tau: Complex64) -> Result<Complex64> {
    check_upper(tau)?;
    let value = if tau.im >= 0.5 {
        let q = nome(tau);
        let r = euler_product(q * q).powi(3) * euler_product(q.powi(8)).powi(2) / euler_product(q.powi(4)).powi(4);
        q * r.powi(4)
    } else {
        (eta(2.0 * tau)?.powi(3) * eta(8.0 * tau)?.powi(2) / eta(4.0 * tau)?.powi(4)).powi(4)
    };
    crate::error::finite(2.0 * PI * I * 16.0 * value, "x'(τ)")
}

/// `t ↦ x(i/(4t))`, real and increasing from 0 to 4 on `t > 0`.
fn x_on_axis(t: f64) -> Result<f64> {
    Ok(x_of_tau(Complex64::new(0.0, 0.25 / t))?.re)
}

/// A point `τ_k = i·t_k` with `x(-1/(4τ_k)) = x(i/(4t_k)) = k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularPoint {
    pub k: f64,
    pub t_k: f64,
    /// `e^{-π t_k}`.
    pub q_k: f64,
}

impl ModularPoint {
    pub fn tau(&self) -> Complex64 {
        Complex64::new(0.0, self.t_k)
    }
}

/// Inverts `t ↦ x(i/(4t))` by bracketing and bisection on `log t`.
pub fn solve_tk(k: f64) -> Result<ModularPoint> {
    if !(k > 0.0 && k < 4.0) {
        return Err(domain(format!("solve_tk needs 0 < k < 4, got {k}")));
    }
    let (mut lo, mut hi) = (1.0f64, 1.0f64);
    let mut expansions = 0;
    while x_on_axis(lo)? > k {
        lo /= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::NonConvergence { what: "solve_tk bracket", limit: 200 });
        }
    }
    while x_on_axis(hi)? < k {
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 || x_on_axis(hi)? == 4.0 {
            return Err(Error::NonConvergence { what: "solve_tk bracket", limit: 200 });
        }
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        if x_on_axis(mid)? < k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (xl, xh) = (x_on_axis(lo)?, x_on_axis(hi)?);
    let t_k = if (xl - k).abs() <= (xh - k).abs() { lo } else { hi };
    let residual = (x_on_axis(t_k)? - k).abs();
    if residual > 1e-12 * k.max(1.0) {
        return Err(Error::NonConvergence { what: "solve_tk bisection", limit: 200 });
    }
    Ok(ModularPoint { k, t_k, q_k: (-PI * t_k).exp() })
}

fn chi_minus4(n: i64) -> i64 {
    match n.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Truncated series value with a bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

impl SeriesEstimate {
    pub fn is_truncated(&self) -> bool {
        self.tail_bound > QSERIES_TAIL_TOL
    }
}

/// Coefficient of `qⁿ` in `Σ_{d,f ≥ 1, f odd} (d/f)(-1)^{d+1} χ₋₄(f) q^{df}`.
fn qseries_coefficient(n: usize) -> f64 {
    (1..=n)
        .filter(|f| f % 2 == 1 && n % f == 0)
        .map(|f| {
            let d = n / f;
            let sign = if d % 2 == 1 { 1.0 } else { -1.0 };
            sign * chi_minus4(f as i64) as f64 * d as f64 / f as f64
        })
        .sum()
}

/// Smallest number of terms with `q^terms < 10⁻¹⁶`.
pub fn default_terms(q: f64) -> usize {
    if q <= 0.0 {
        1
    } else {
        ((-16.0 * 10f64.ln()) / q.ln()).ceil().max(1.0) as usize
    }
}

/// `c₀(k) = (16/π) Σ_{d,f ≥ 1, f odd} (d/f)(-1)^{d+1} χ₋₄(f) q_k^{df}`,
/// summed over `n = df ≤ terms`.
pub fn c0_qseries(pt: &ModularPoint, terms: usize) -> Result<SeriesEstimate> {
    let q = pt.q_k;
    if !(q > 0.0 && q < 1.0) || terms == 0 {
        return Err(domain(format!("q-series needs 0 < q < 1 and terms >= 1, got q = {q}, terms = {terms}")));
    }
    let mut sum = 0.0;
    let mut qn = 1.0;
    for n in 1..=terms {
        qn *= q;
        sum += qseries_coefficient(n) * qn;
    }
    // |coefficient| ≤ σ(n) ≤ n(1 + log n); the bound terms decrease once n > 1/|log q|
    let mut tail = 0.0;
    let mut qn_tail = qn;
    for n in terms + 1..terms + 2000 {
        qn_tail *= q;
        let term = n as f64 * (1.0 + (n as f64).ln()) * qn_tail;
        tail += term;
        if term < 1e-30 {
            break;
        }
    }
    Ok(SeriesEstimate { value: 16.0 / PI * sum, tail_bound: 16.0 / PI * tail, terms })
}

/// Truncation of the lattice sum to `|m|, |n| ≤ max_abs_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeCutoff {
    max_abs_index: u32,
}

impl LatticeCutoff {
    pub fn new(max_abs_index: u32) -> Result<Self> {
        if max_abs_index < 3 {
            return Err(domain(format!("lattice cutoff must be at least 3, got {max_abs_index}")));
        }
        Ok(Self { max_abs_index })
    }

    pub fn max_abs_index(&self) -> u32 {
        self.max_abs_index
    }
}

/// The truncated lattice sum, with and without an estimate of the
/// discarded `n`-tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeEstimate {
    pub raw: Complex64,
    /// `raw` plus `½(1/(N+1+mτ) + 1/(N+1-mτ))` per row, the leading
    /// Euler–Maclaurin term of `Σ_{n odd, |n|>N} (mτ+n)⁻²`.
    pub corrected: Complex64,
}

/// `c₀(k) = (8i/π³) Σ_{m,n odd} e^{-2πim/4} / ((mτ_k + n)² m)`, summed over
/// `n` first within each row `m`.
pub fn c0_lattice(pt: &ModularPoint, cutoff: LatticeCutoff) -> LatticeEstimate {
    let bound = cutoff.max_abs_index as i64;
    let top = if bound % 2 == 1 { bound } else { bound - 1 };
    let tau = pt.tau();
    let rows: Vec<(Complex64, Complex64)> = (-top..=top)
        .step_by(2)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let mt = tau * m as f64;
            let row: Complex64 = (-top..=top).step_by(2).map(|n| (mt + n as f64).powi(2).inv()).sum();
            let edge = (top + 1) as f64;
            let tail = 0.5 * ((mt + edge).inv() + (edge - mt).inv());
            let weight = (-2.0 * PI * I * m as f64 / 4.0).exp() / m as f64;
            (weight * row, weight * tail)
        })
        .collect();
    let scale = 8.0 * I / PI.powi(3);
    let raw: Complex64 = rows.iter().map(|r| r.0).sum();
    let tail: Complex64 = rows.iter().map(|r| r.1).sum();
    LatticeEstimate { raw: scale * raw, corrected: scale * (raw + tail) }
}

/// Coefficients `a₁, …, a_{n_max}` of
/// `(η(4τ)⁴ η(τ)² / η(2τ)³)² = Σ aₙ qⁿ`, via
/// `aₙ = (-1)ⁿ Σ_{d|n} d² (-1)^{n/d} χ₋₄(n/d)`.
pub fn eisenstein_coeffs(n_max: usize) -> Vec<i64> {
    (1..=n_max as i64)
        .map(|n| {
            let sum: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| {
                    let e = n / d;
                    d * d * if e % 2 == 0 { 1 } else { -1 } * chi_minus4(e)
                })
                .sum();
            if n % 2 == 0 {
                sum
            } else {
                -sum
            }
        })
        .collect()
}

/// The same coefficients by multiplying out
/// `q ∏ (1-q^{4n})⁸ (1-qⁿ)⁴ (1-q^{2n})⁻⁶` in integer arithmetic.
pub fn eta_quotient_coeffs(n_max: usize) -> Vec<i64> {
    // series[i] is the coefficient of q^{i+1}
    let mut series = vec![0i64; n_max];
    if n_max == 0 {
        return series;
    }
    series[0] = 1;
    let mut multiply = |step: usize, power: i32| {
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                for i in (step..n_max).rev() {
                    series[i] -= series[i - step];
                }
            } else {
                for i in step..n_max {
                    series[i] += series[i - step];
                }
            }
        }
    };
    for n in 1..n_max {
        multiply(4 * n, 8);
        multiply(n, 4);
        multiply(2 * n, -6);
    }
    series
}
