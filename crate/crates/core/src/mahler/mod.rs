//! Classical and areal Mahler measures of `x + y + k`, of
//! `Q_k = (1 + x)(1 + y) + kz`, and of univariate polynomials.
//!
//! The classical measure averages `log|P|` over the unit torus; the areal
//! measure averages it over the polydisk with normalized area measure.

mod roots;

pub use roots::roots;

use crate::densities::{coeff_c, coeff_d, f_density, g_density, integrate_p_u, p_t1, CoefficientIndex};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, EndpointRule, QuadratureSpec};
use crate::specfun::{bloch_wigner, gamma, hyp_real};
use num_complex::Complex64;
use std::f64::consts::PI;

/// How a [`MeasureValue`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Bloch–Wigner dilogarithm closed form for `m(x + y + k)`.
    CassaigneMaillot,
    /// Terminating or convergent hypergeometric series in `k²/4`.
    Hypergeometric,
    /// Classical measure minus the elementary difference term.
    DifferenceTheorem,
    /// Dilogarithm closed form combined with the elementary difference term.
    Dilogarithm,
    /// One-dimensional integral against a random-walk density.
    DensityRoute,
    JensenRoots,
    PritskerRoots,
    /// The constant term dominates, so the measure is `log|a₀|`.
    Shortcut,
    /// Elementary branch outside the range where the cycle is nonempty.
    Elementary,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::CassaigneMaillot => "cassaigne-maillot",
            Method::Hypergeometric => "hypergeometric",
            Method::DifferenceTheorem => "difference-thm",
            Method::Dilogarithm => "dilog",
            Method::DensityRoute => "density-route",
            Method::JensenRoots => "jensen-roots",
            Method::PritskerRoots => "pritsker-roots",
            Method::Shortcut => "shortcut",
            Method::Elementary => "elementary",
        }
    }

    /// Absolute accuracy the method is tested to, for values of moderate size.
    pub fn error_bound(self) -> f64 {
        match self {
            Method::CassaigneMaillot | Method::Hypergeometric | Method::Dilogarithm | Method::DifferenceTheorem => 1e-12,
            Method::DensityRoute => 1e-9,
            Method::JensenRoots | Method::PritskerRoots => 1e-10,
            Method::Shortcut | Method::Elementary => 1e-15,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue {
    pub value: f64,
    pub method: Method,
}

impl MeasureValue {
    fn new(value: f64, method: Method) -> Result<Self> {
        if value.is_finite() {
            Ok(Self { value, method })
        } else {
            Err(Error::NonFinite(format!("{} measure", method.as_str())))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XykRoute {
    CassaigneMaillot,
    Hypergeometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArealXykRoute {
    Hypergeometric,
    Difference,
    Dilogarithm,
    Density,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArealQkRoute {
    Theorem,
    Density,
}

fn check_k(k: f64, allow_zero: bool) -> Result<f64> {
    let k = k.abs();
    if !k.is_finite() || (k == 0.0 && !allow_zero) {
        return Err(domain(format!("family parameter must be finite{}, got {k}", if allow_zero { "" } else { " and nonzero" })));
    }
    Ok(k)
}

/// `m(x + y + k)`. Only `|k|` matters.
pub fn m_xyk(k: f64, route: XykRoute) -> Result<MeasureValue> {
    let k = check_k(k, true)?;
    if k >= 2.0 {
        return MeasureValue::new(k.ln(), Method::Shortcut);
    }
    match route {
        XykRoute::CassaigneMaillot => {
            if k == 0.0 {
                return MeasureValue::new(0.0, Method::CassaigneMaillot);
            }
            let angle = (k / 2.0).asin();
            let d = bloch_wigner(Complex64::from_polar(1.0, 2.0 * angle));
            MeasureValue::new((2.0 * k.ln() * angle + d) / PI, Method::CassaigneMaillot)
        }
        XykRoute::Hypergeometric => {
            let f = hyp_real(&[0.5, 0.5, 0.5], &[1.5, 1.5], k * k / 4.0)?;
            MeasureValue::new(k / PI * f, Method::Hypergeometric)
        }
    }
}

/// `m(x + y + k) - m_𝔻(x + y + k)` for `0 ≤ k ≤ 2`.
pub fn xyk_difference_term(k: f64) -> f64 {
    let root = ((2.0 - k) * (2.0 + k)).max(0.0).sqrt();
    (k * root * (10.0 + k * k) + (8.0 - 16.0 * k * k) * (k / 2.0).min(1.0).acos()) / (16.0 * PI)
}

/// `m_𝔻(x + y + k)`. Only `|k|` matters.
pub fn md_xyk(k: f64, route: ArealXykRoute) -> Result<MeasureValue> {
    let k = check_k(k, true)?;
    if k >= 2.0 {
        return MeasureValue::new(k.ln(), Method::Shortcut);
    }
    match route {
        ArealXykRoute::Hypergeometric => {
            let f = hyp_real(&[-0.5, 0.5, 1.5], &[2.5, 2.5], k * k / 4.0)?;
            MeasureValue::new(-4.0 * k.powi(3) / (9.0 * PI) * f + k * k / 2.0 - 0.25, Method::Hypergeometric)
        }
        ArealXykRoute::Difference => {
            let m = m_xyk(k, XykRoute::Hypergeometric)?.value;
            MeasureValue::new(m - xyk_difference_term(k), Method::DifferenceTheorem)
        }
        ArealXykRoute::Dilogarithm => {
            let m = m_xyk(k, XykRoute::CassaigneMaillot)?.value;
            MeasureValue::new(m - xyk_difference_term(k), Method::Dilogarithm)
        }
        ArealXykRoute::Density => MeasureValue::new(md_xyk_density(k)?, Method::DensityRoute),
    }
}

/// `log k + ∫_k^2 p_T1(t) log(t/k) dt`, rearranged as
/// `log k · P(T < k) + ∫_k^2 p_T1(t) log t dt` so that `k = 0` is allowed.
fn md_xyk_density(k: f64) -> Result<f64> {
    let spec = QuadratureSpec::new(1e-14, 1e-14, 4000, EndpointRule::SqrtSingular)?;
    let density = |t: f64| p_t1(t).unwrap_or(f64::NAN);
    let upper = integrate(|t| if t > 0.0 { density(t) * t.ln() } else { 0.0 }, k, 2.0, &spec)?;
    let below = if k > 0.0 {
        k.ln() * integrate(density, 0.0, k, &spec.with_rule(EndpointRule::Smooth))?.value
    } else {
        0.0
    };
    Ok(below + upper.value)
}

/// `m(x + y + k) - m_𝔻(x + y + k) - difference term`, which vanishes on
/// `[0, 2]`.
pub fn xyk_difference_residual(k: f64) -> Result<f64> {
    let m = m_xyk(k, XykRoute::CassaigneMaillot)?.value;
    let md = md_xyk(k, ArealXykRoute::Hypergeometric)?.value;
    Ok(m - md - xyk_difference_term(k))
}

fn c0(k: f64) -> Result<f64> {
    coeff_c(CoefficientIndex::plain(0), k)
}

/// `m(Q_k)`.
pub fn m_qk(k: f64) -> Result<MeasureValue> {
    let k = check_k(k, false)?;
    if k >= 4.0 {
        return MeasureValue::new(k.ln(), Method::Elementary);
    }
    let d0 = coeff_d(CoefficientIndex::plain(0), k)?;
    MeasureValue::new(k.ln() + d0 - k.ln() * c0(k)?, Method::DensityRoute)
}

/// `m_𝔻(Q_k)`.
pub fn md_qk(k: f64, route: ArealQkRoute) -> Result<MeasureValue> {
    let k = check_k(k, false)?;
    let lk = k.ln();
    let k2 = k * k;
    if k >= 4.0 {
        return MeasureValue::new(9.0 / (8.0 * k2) - 0.5 + lk, Method::Elementary);
    }
    match route {
        ArealQkRoute::Theorem => {
            let m = m_qk(k)?.value;
            let (f, g) = (f_density(k)?, g_density(k)?);
            let value = 9.0 / (8.0 * k2) - 0.5 + (k2 + 8.0) / 8.0 * m - k2 / 8.0 * lk
                + c0(k)? * (0.5 - 9.0 / (8.0 * k2) + 5.0 * k2 / 32.0)
                + f * (-9.0 / (8.0 * k) - 29.0 * k / 64.0 + 17.0 * k * k2 / 128.0)
                + g * (-9.0 / (8.0 * k) - 49.0 * k / 32.0);
            MeasureValue::new(value, Method::DifferenceTheorem)
        }
        ArealQkRoute::Density => {
            let tail = integrate_p_u(|t| t.ln() - t * t / (2.0 * k2) + 0.5 - lk, k, 4.0, 1e-14)?;
            MeasureValue::new(9.0 / (8.0 * k2) - 0.5 + lk + tail, Method::DensityRoute)
        }
    }
}

/// A univariate polynomial with constant-first coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Complex64>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(domain("polynomial coefficients must be finite"));
        }
        match coeffs.last() {
            Some(lead) if lead.norm() > 0.0 => Ok(Self { coeffs }),
            _ => Err(domain("polynomial needs a nonzero leading coefficient")),
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic-up-to-`lead` polynomial with the given roots.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Result<Self> {
        let mut p = vec![lead];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                next[i] -= a * r;
                next[i + 1] += a;
            }
            p = next;
        }
        Self::new(p)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    fn dominant_constant(&self) -> bool {
        let rest: f64 = self.coeffs[1..].iter().map(|c| c.norm()).sum();
        self.coeffs[0].norm() >= rest
    }

    pub fn roots(&self) -> Result<Vec<Complex64>> {
        roots(&self.coeffs)
    }
}

/// `m(P) = log|lead| + Σ log⁺|α|` over the roots `α`.
pub fn jensen_mahler(p: &UniPoly) -> Result<MeasureValue> {
    if p.dominant_constant() {
        return MeasureValue::new(p.coeffs[0].norm().ln(), Method::Shortcut);
    }
    let lead = p.coeffs[p.degree()].norm().ln();
    let outside: f64 = p.roots()?.iter().map(|r| r.norm().ln().max(0.0)).sum();
    MeasureValue::new(lead + outside, Method::JensenRoots)
}

/// `m_𝔻(P)`: the classical measure plus `½(|α|² - 1)` for each root inside
/// the unit disk.
pub fn pritsker_areal(p: &UniPoly) -> Result<MeasureValue> {
    if p.dominant_constant() {
        return MeasureValue::new(p.coeffs[0].norm().ln(), Method::Shortcut);
    }
    let lead = p.coeffs[p.degree()].norm().ln();
    let value = p.roots()?.iter().fold(lead, |acc, r| {
        let m = r.norm();
        if m >= 1.0 {
            acc + m.ln()
        } else {
            acc + 0.5 * (m * m - 1.0)
        }
    });
    MeasureValue::new(value, Method::PritskerRoots)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeningerFamily {
    /// `Q_k` with respect to `z`.
    QkZ,
    /// `Q_k` with respect to `x`.
    QkX,
    /// `x + y + k` with respect to `x`.
    XykX,
}

/// Normalized volume of the Deninger cycle of the family in the given
/// variable.
pub fn deninger_volume(family: DeningerFamily, k: f64) -> Result<f64> {
    match family {
        DeningerFamily::QkZ | DeningerFamily::QkX => {
            if !(k > 0.0 && k < 4.0) {
                return Err(domain(format!("Q_k cycle volume needs 0 < k < 4, got {k}")));
            }
            let c = c0(k)?;
            Ok(if family == DeningerFamily::QkZ { c } else { 1.0 - c / 2.0 })
        }
        DeningerFamily::XykX => {
            if !(k > 0.0 && k <= 2.0) {
                return Err(domain(format!("x + y + k cycle volume needs 0 < k <= 2, got {k}")));
            }
            Ok(1.0 - (k / 2.0).acos() / PI)
        }
    }
}

/// Residual of the closed form for
/// `₃F₂(½,½,½; 3/2,3/2; z) + (16z/9)·₃F₂(-½,½,3/2; 5/2,5/2; z)` on `0 < z < 1`.
pub fn hypergeometric_combination_residual(z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(domain(format!("combination identity needs 0 < z < 1, got {z}")));
    }
    let lhs = hyp_real(&[0.5, 0.5, 0.5], &[1.5, 1.5], z)? + 16.0 * z / 9.0 * hyp_real(&[-0.5, 0.5, 1.5], &[2.5, 2.5], z)?;
    let w = Complex64::new(1.0 - z, 0.0).sqrt();
    let root_neg = Complex64::new(0.0, z.sqrt());
    let log_term = (w + root_neg).ln() * (1.0 - 8.0 * z) / (4.0 * root_neg);
    let rhs = (2.0 * z + 5.0) * w / 4.0 - log_term;
    if rhs.im.abs() > 1e-12 * rhs.norm().max(1.0) {
        return Err(Error::BranchCut(rhs));
    }
    Ok(lhs - rhs.re)
}

/// The `₄F₃(…; 1)` combination that appears in the areal measure at
/// `k = √2`; it equals `log 2 / 4`.
pub fn c_sqrt2() -> Result<f64> {
    let g = |x: f64| gamma(Complex64::new(x, 0.0)).map(|v| v.re);
    let scale = (2.0 * PI.powi(3)).sqrt();
    let first = g(0.75)?.powi(2) / scale * hyp_real(&[0.25, 0.25, 0.75, 0.75], &[0.5, 1.25, 1.25], 1.0)?;
    let second = g(0.25)?.powi(2) / (72.0 * scale) * hyp_real(&[0.75, 0.75, 1.25, 1.25], &[1.5, 1.75, 1.75], 1.0)?;
    Ok(first - second)
}
