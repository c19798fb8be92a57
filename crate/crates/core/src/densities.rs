//! Densities of random-walk lengths and the weighted integrals built on them.
//!
//! * `|X + Y|` for independent uniform points of the unit disk: [`p_t1`].
//! * `|X + Y|` for independent uniform points of the unit circle: [`p_s1`].
//! * `|X + Y + k|` given `|X + Y| = v` (circle walk): [`p_cond`].
//! * `|(1 + X)(1 + Y)|` on the circle: [`f_density`], with companion weight
//!   [`g_density`]; on the disk: [`p_u`].
//!
//! The moments `c_n(k) = ∫_k^4 t^{2n} F`, `d_n(k) = ∫_k^4 t^{2n} log t F` and
//! their `G`-weighted versions are memoized per `(n, kind, k)`.

use crate::error::{domain, Result};
use crate::quadrature::{integrate, integrate_with_breaks, EndpointRule, QuadratureSpec};
use crate::specfun::{elliptic_e_complement, elliptic_k_complement};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

/// Tolerance used for every memoized moment integral.
pub const MOMENT_TOL: f64 = 1e-14;

/// Density of `|X + Y|` for `X, Y` uniform on the unit disk.
pub fn p_t1(v: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&v) {
        return Err(domain(format!("p_t1 needs 0 <= v <= 2, got {v}")));
    }
    let root = ((2.0 - v) * (2.0 + v)).sqrt();
    let value = v / PI * (2.0 * PI - v * root - 4.0 * (v / 2.0).asin());
    Ok(value.max(0.0))
}

/// Density of `|X + Y|` for `X, Y` uniform on the unit circle.
pub fn p_s1(v: f64) -> Result<f64> {
    if !(0.0..2.0).contains(&v) {
        return Err(domain(format!("p_s1 needs 0 <= v < 2, got {v}")));
    }
    Ok(2.0 / (PI * ((2.0 - v) * (2.0 + v)).sqrt()))
}

/// Density of `|S + k|` at `u` given `|S| = v`, where `S` has uniform argument.
pub fn p_cond(u: f64, v: f64, k: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&v) || !(k >= 0.0) || !k.is_finite() {
        return Err(domain(format!("p_cond needs 0 <= v <= 2 and k >= 0, got v = {v}, k = {k}")));
    }
    let (lo, hi) = ((k - v).abs(), k + v);
    if !(u > lo && u < hi) {
        return Err(domain(format!("p_cond: u = {u} outside ({lo}, {hi})")));
    }
    // 4k²v² - (u² - v² - k²)² factored to avoid cancellation near the ends
    let disc = (hi - u) * (hi + u) * (u - lo) * (u + lo);
    Ok(2.0 * u / (PI * disc.sqrt()))
}

fn check_t(t: f64, allow_zero: bool) -> Result<()> {
    let ok = if allow_zero { t >= 0.0 } else { t > 0.0 };
    if ok && t <= 4.0 {
        Ok(())
    } else {
        Err(domain(format!("density argument must lie in (0, 4], got {t}")))
    }
}

/// `F(t) = K(1 - t²/16)/π²`, the density of `|(1+x)(1+y)|` on the torus.
pub fn f_density(t: f64) -> Result<f64> {
    check_t(t, false)?;
    Ok(elliptic_k_complement(t * t / 16.0)? / (PI * PI))
}

/// `G(t) = E(1 - t²/16)/π²`.
pub fn g_density(t: f64) -> Result<f64> {
    check_t(t, true)?;
    Ok(elliptic_e_complement(t * t / 16.0)? / (PI * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoefficientIndex {
    pub n: i32,
    pub primed: bool,
}

impl CoefficientIndex {
    pub fn plain(n: i32) -> Self {
        Self { n, primed: false }
    }

    pub fn primed(n: i32) -> Self {
        Self { n, primed: true }
    }

    fn validate(self, k: f64) -> Result<()> {
        let lowest = if self.primed { -1 } else { 0 };
        if self.n < lowest || self.n > 4 {
            return Err(domain(format!("coefficient index {} out of range", self.n)));
        }
        if !(0.0..=4.0).contains(&k) || (self.n < 0 && k == 0.0) {
            return Err(domain(format!("coefficient parameter k = {k} out of range")));
        }
        Ok(())
    }
}

type CacheKey = (CoefficientIndex, bool, u64);

fn cache() -> &'static RwLock<HashMap<CacheKey, f64>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn moment_spec(k: f64) -> QuadratureSpec {
    let rule = if k < 1e-3 {
        EndpointRule::LogSingular
    } else {
        EndpointRule::Smooth
    };
    QuadratureSpec::new(MOMENT_TOL, MOMENT_TOL, 4000, rule).expect("valid moment spec")
}

fn moment(idx: CoefficientIndex, with_log: bool, k: f64) -> Result<f64> {
    idx.validate(k)?;
    let key = (idx, with_log, k.to_bits());
    if let Some(&v) = cache().read().expect("moment cache poisoned").get(&key) {
        return Ok(v);
    }
    if k == 4.0 {
        return Ok(0.0);
    }
    let weight = |t: f64| {
        let base = if idx.primed {
            elliptic_e_complement(t * t / 16.0)
        } else {
            elliptic_k_complement(t * t / 16.0)
        }
        .unwrap_or(f64::NAN)
            / (PI * PI);
        let log = if with_log { t.ln() } else { 1.0 };
        t.powi(2 * idx.n) * log * base
    };
    let r = integrate(weight, k, 4.0, &moment_spec(k))?;
    cache().write().expect("moment cache poisoned").insert(key, r.value);
    Ok(r.value)
}

/// `c_n(k) = ∫_k^4 t^{2n} F(t) dt`, or the `G`-weighted `c'_n` when primed.
pub fn coeff_c(idx: CoefficientIndex, k: f64) -> Result<f64> {
    moment(idx, false, k)
}

/// `d_n(k) = ∫_k^4 t^{2n} log(t) F(t) dt`, or the `G`-weighted `d'_n` when primed.
pub fn coeff_d(idx: CoefficientIndex, k: f64) -> Result<f64> {
    moment(idx, true, k)
}

/// `θy₀(t) = -∫_t^4 F`, with `θ = t d/dt`.
pub fn theta_y0(t: f64) -> Result<f64> {
    check_t(t, false)?;
    Ok(-coeff_c(CoefficientIndex::plain(0), t)?)
}

/// The solution of `θ²y = tF(t)` vanishing to second order at `t = 4`.
pub fn y0(t: f64) -> Result<f64> {
    check_t(t, false)?;
    log_moment(t)
}

/// Tail integrals `∫_x^4 F` and `∫_x^4 log(u) F(u) du` at the boundaries of
/// dyadic panels `[4·2^{-j-1}, 4·2^{-j}]`. Each panel keeps the logarithmic
/// singularity of `F` at the origin one panel width away, so a fixed
/// Gauss–Legendre rule is accurate to rounding on every panel and on any
/// piece `[t, right edge]` of one.
struct TailTable {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `(left edge, ∫ F, ∫ log·F)` from the left edge to 4.
    edges: Vec<(f64, f64, f64)>,
}

const TAIL_PANELS: usize = 90;
const TAIL_ORDER: usize = 20;

impl TailTable {
    fn get() -> &'static TailTable {
        static TABLE: OnceLock<TailTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let (nodes, weights) = crate::quadrature::gauss_legendre(TAIL_ORDER);
            let mut table = TailTable {
                nodes,
                weights,
                edges: Vec::with_capacity(TAIL_PANELS),
            };
            let (mut acc_f, mut acc_lf) = (0.0, 0.0);
            let mut right = 4.0;
            for _ in 0..TAIL_PANELS {
                let left = 0.5 * right;
                let (f, lf) = table.panel(left, right);
                acc_f += f;
                acc_lf += lf;
                table.edges.push((left, acc_f, acc_lf));
                right = left;
            }
            table
        })
    }

    fn panel(&self, a: f64, b: f64) -> (f64, f64) {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        let mut f = 0.0;
        let mut lf = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let u = c + h * x;
            let fu = elliptic_k_complement(u * u / 16.0).unwrap_or(f64::NAN) / (PI * PI);
            f += w * fu;
            lf += w * u.ln() * fu;
        }
        (h * f, h * lf)
    }

    /// `(∫_t^4 F, ∫_t^4 log(u) F(u) du)` for `0 < t <= 4`.
    fn tails(&self, t: f64) -> (f64, f64) {
        // index of the panel containing t: 4·2^{-j-1} <= t < 4·2^{-j}
        let j = ((4.0 / t).log2().floor() as usize).min(TAIL_PANELS - 1);
        let right = 4.0 * 0.5f64.powi(j as i32);
        let (outer_f, outer_lf) = if j == 0 { (0.0, 0.0) } else { (self.edges[j - 1].1, self.edges[j - 1].2) };
        if t >= right {
            return (outer_f, outer_lf);
        }
        let (f, lf) = self.panel(t, right);
        (outer_f + f, outer_lf + lf)
    }
}

fn log_moment(t: f64) -> Result<f64> {
    if t == 4.0 {
        return Ok(0.0);
    }
    let (f, lf) = TailTable::get().tails(t);
    let value = lf - t.ln() * f;
    crate::error::finite(crate::Complex64::new(value, 0.0), "log moment").map(|z| z.re)
}

/// Density of `|(1+X)(1+Y)|` for `X, Y` uniform on the unit disk.
pub fn p_u(t: f64) -> Result<f64> {
    check_t(t, false)?;
    Ok(t * log_moment(t)?)
}

/// `∫_a^b p_u(t) w(t) dt`, the nested integral used by the density route of
/// the areal measure of the `Q_k` family.
pub fn integrate_p_u(w: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(0.0..=4.0).contains(&a) || !(a..=4.0).contains(&b) {
        return Err(domain(format!("p_u integral over [{a}, {b}] outside [0, 4]")));
    }
    let spec = QuadratureSpec::new(tol, tol, 4000, EndpointRule::LogSingular)?;
    let r = integrate_with_breaks(
        |t| if t <= 0.0 { 0.0 } else { p_u(t).unwrap_or(f64::NAN) * w(t) },
        a,
        b,
        &[],
        &spec,
    )?;
    Ok(r.value)
}
