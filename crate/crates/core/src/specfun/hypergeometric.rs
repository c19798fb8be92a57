//! Generalized hypergeometric series `pFq(a; b; z)`.
//!
//! Terms are generated by their ratio recurrence and accumulated in
//! double-double complex arithmetic, so alternating series with large
//! intermediate terms keep their low-order digits. At `z = 1` with
//! `p = q + 1` the partial sums are extrapolated along a doubling ladder,
//! using that the remainder after `N` terms expands in powers `N^-(σ+j)`
//! with `σ = Σb - Σa`.

use super::dd::ComplexDD;
use super::gamma::gamma_ratio;
use super::gauss::gauss_2f1;
use super::gamma::is_nonpositive_integer;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_complex, EndpointRule, QuadratureSpec};
use num_complex::Complex64;

/// Parameters and argument of a generalized hypergeometric series.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
    argument: Complex64,
}

impl HypergeometricSpec {
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>, argument: Complex64) -> Result<Self> {
        if let Some(b) = lower.iter().find(|&&b| is_nonpositive_integer(b)) {
            return Err(Error::InvalidSpec(format!("lower parameter {b} is a non-positive integer")));
        }
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        if !upper.iter().chain(lower.iter()).all(finite) || !finite(&argument) {
            return Err(Error::InvalidSpec("non-finite parameter".into()));
        }
        Ok(Self { upper, lower, argument })
    }

    /// Convenience constructor for real parameters and argument.
    pub fn real(upper: &[f64], lower: &[f64], argument: f64) -> Result<Self> {
        Self::new(
            upper.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
            lower.iter().map(|&b| Complex64::new(b, 0.0)).collect(),
            Complex64::new(argument, 0.0),
        )
    }

    pub fn upper(&self) -> &[Complex64] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex64] {
        &self.lower
    }

    pub fn argument(&self) -> Complex64 {
        self.argument
    }

    /// `Σ lower − Σ upper`, the exponent governing convergence on `|z| = 1`.
    pub fn excess(&self) -> Complex64 {
        self.lower.iter().sum::<Complex64>() - self.upper.iter().sum::<Complex64>()
    }

    fn terminating_degree(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|&&a| is_nonpositive_integer(a))
            .map(|a| (-a.re).round() as usize)
            .min()
    }
}

/// Truncation control for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    max_terms: usize,
    tail_tol: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, tail_tol: f64) -> Result<Self> {
        if max_terms < 8 {
            return Err(Error::InvalidSpec("max_terms must be at least 8".into()));
        }
        if !(tail_tol > 0.0) {
            return Err(Error::InvalidSpec("tail_tol must be positive".into()));
        }
        Ok(Self { max_terms, tail_tol })
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 1 << 17,
            tail_tol: 1e-17,
        }
    }
}

/// A summed series together with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    pub tail_estimate: f64,
    pub terms: usize,
}

/// Evaluates `pFq` for the given parameters.
pub fn pfq(spec: &HypergeometricSpec, ctl: &SeriesControl) -> Result<Complex64> {
    pfq_detailed(spec, ctl).map(|s| s.value)
}

/// Shorthand for [`pfq`] with default control.
pub fn hyp(upper: &[Complex64], lower: &[Complex64], z: Complex64) -> Result<Complex64> {
    let spec = HypergeometricSpec::new(upper.to_vec(), lower.to_vec(), z)?;
    pfq(&spec, &SeriesControl::default())
}

/// Shorthand for real parameters; the result is the real part.
pub fn hyp_real(upper: &[f64], lower: &[f64], z: f64) -> Result<f64> {
    let spec = HypergeometricSpec::real(upper, lower, z)?;
    Ok(pfq(&spec, &SeriesControl::default())?.re)
}

/// Like [`pfq`], also reporting the tail estimate and number of terms.
pub fn pfq_detailed(spec: &HypergeometricSpec, ctl: &SeriesControl) -> Result<SeriesSum> {
    let z = spec.argument;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(SeriesSum {
            value: Complex64::new(1.0, 0.0),
            tail_estimate: 0.0,
            terms: 1,
        });
    }
    if let Some(deg) = spec.terminating_degree() {
        if deg < ctl.max_terms {
            return Ok(sum_terms(spec, deg + 1).finish());
        }
    }
    let p = spec.upper.len();
    let q = spec.lower.len();
    if p > q + 1 {
        return Err(Error::NonConvergence {
            what: "divergent hypergeometric series",
            limit: 0,
        });
    }
    if p == q + 1 {
        let r = z.norm();
        if r > 1.0 + 1e-15 {
            return Err(Error::NonConvergence {
                what: "hypergeometric series outside the unit disk",
                limit: 0,
            });
        }
        if (z - 1.0).norm() <= 1e-15 {
            return unit_argument(spec, ctl);
        }
        if r >= 1.0 - 1e-15 && spec.excess().re <= 0.0 {
            return Err(Error::NonConvergence {
                what: "hypergeometric series on the unit circle",
                limit: 0,
            });
        }
        if r >= NEAR_UNIT {
            if let Some(sum) = euler_reduction(spec, ctl) {
                return sum;
            }
        }
    }
    sum_adaptive(spec, ctl)
}

struct Accumulator {
    sum: ComplexDD,
    term: ComplexDD,
    n: usize,
    max_term: f64,
}

impl Accumulator {
    fn finish(&self) -> SeriesSum {
        SeriesSum {
            value: self.sum.to_c64(),
            tail_estimate: 0.0,
            terms: self.n,
        }
    }
}

fn term_ratio(upper: &[ComplexDD], lower: &[ComplexDD], z: ComplexDD, n: usize) -> ComplexDD {
    let nf = n as f64;
    let mut num = z;
    for &a in upper {
        num = num * a.add_real(nf);
    }
    let mut den = ComplexDD::from_real(nf + 1.0);
    for &b in lower {
        den = den * b.add_real(nf);
    }
    num / den
}

struct Params {
    upper: Vec<ComplexDD>,
    lower: Vec<ComplexDD>,
    z: ComplexDD,
}

impl Params {
    fn of(spec: &HypergeometricSpec) -> Self {
        Self {
            upper: spec.upper.iter().map(|&a| a.into()).collect(),
            lower: spec.lower.iter().map(|&b| b.into()).collect(),
            z: spec.argument.into(),
        }
    }
}

fn sum_terms(spec: &HypergeometricSpec, count: usize) -> Accumulator {
    let params = Params::of(spec);
    let mut acc = Accumulator {
        sum: ComplexDD::ONE,
        term: ComplexDD::ONE,
        n: 1,
        max_term: 1.0,
    };
    extend(&params, &mut acc, count);
    acc
}

fn extend(params: &Params, acc: &mut Accumulator, count: usize) {
    while acc.n < count {
        let r = term_ratio(&params.upper, &params.lower, params.z, acc.n - 1);
        acc.term = acc.term * r;
        acc.sum = acc.sum + acc.term;
        acc.max_term = acc.max_term.max(acc.term.norm_f64());
        acc.n += 1;
    }
}

fn sum_adaptive(spec: &HypergeometricSpec, ctl: &SeriesControl) -> Result<SeriesSum> {
    let params = Params::of(spec);
    let zabs = spec.argument.norm();
    let p = spec.upper.len();
    let q = spec.lower.len();
    let limit_ratio = if p == q + 1 { zabs } else { 0.0 };
    // ratios settle once n dominates every parameter
    let settle = spec
        .upper
        .iter()
        .chain(spec.lower.iter())
        .map(|a| a.norm())
        .fold(0.0_f64, f64::max)
        + 2.0;

    let mut sum = ComplexDD::ONE;
    let mut term = ComplexDD::ONE;
    let mut max_term = 1.0_f64;
    let mut satisfied = 0;
    for n in 0..ctl.max_terms {
        let r = term_ratio(&params.upper, &params.lower, params.z, n);
        term = term * r;
        sum = sum + term;
        let t = term.norm_f64();
        max_term = max_term.max(t);
        if t == 0.0 {
            return Ok(SeriesSum {
                value: sum.to_c64(),
                tail_estimate: 0.0,
                terms: n + 2,
            });
        }
        let rho = r.norm_f64().max(limit_ratio);
        if (n as f64) < settle || rho >= 1.0 {
            continue;
        }
        let tail = t * rho / (1.0 - rho);
        let scale = sum.norm_f64().max(f64::EPSILON * max_term);
        if tail <= ctl.tail_tol * scale {
            satisfied += 1;
            if satisfied >= 2 {
                return Ok(SeriesSum {
                    value: sum.to_c64(),
                    tail_estimate: tail,
                    terms: n + 2,
                });
            }
        } else {
            satisfied = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        limit: ctl.max_terms,
    })
}

/// Above this modulus a `3F2` is reduced to an integral of a `2F1`, since
/// the plain series needs about `36/(1 - |z|)` terms.
const NEAR_UNIT: f64 = 0.95;

/// `3F2(a₁,a₂,a₃; b₁,b₂; z) = ∫₀¹ t^{a₃-1}(1-t)^{b₂-a₃-1} 2F1(a₁,a₂; b₁; zt) dt / B(a₃, b₂-a₃)`
/// for some pairing with `Re b₂ > Re a₃ > 0`. Returns `None` when no
/// pairing qualifies.
fn euler_reduction(spec: &HypergeometricSpec, ctl: &SeriesControl) -> Option<Result<SeriesSum>> {
    if spec.upper.len() != 3 || spec.lower.len() != 2 {
        return None;
    }
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..3 {
        for j in 0..2 {
            let (a, b) = (spec.upper[i], spec.lower[j]);
            if a.re > 0.0 && b.re > a.re {
                // prefer the mildest endpoint singularities
                let score = (a.re - 1.0).min(0.0) + (b.re - a.re - 1.0).min(0.0);
                if best.map_or(true, |(_, _, s)| score > s) {
                    best = Some((i, j, score));
                }
            }
        }
    }
    let (i, j, _) = best?;
    let a = spec.upper[i];
    let b = spec.lower[j];
    let rest: Vec<Complex64> = (0..3).filter(|&m| m != i).map(|m| spec.upper[m]).collect();
    let c = spec.lower[1 - j];
    let z = spec.argument;
    Some((|| {
        let norm = gamma_ratio(&[b], &[a, b - a])?;
        let quad = QuadratureSpec::new(ctl.tail_tol.max(1e-15), ctl.tail_tol.max(1e-15), 2000, EndpointRule::DoubleExponential)?;
        let failure = std::cell::Cell::new(false);
        let r = integrate_complex(
            |t| {
                if t <= 0.0 || t >= 1.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let w = Complex64::new(t, 0.0).powc(a - 1.0) * Complex64::new(1.0 - t, 0.0).powc(b - a - 1.0);
                match gauss_2f1(rest[0], rest[1], c, z * t) {
                    Ok(f) => w * f,
                    Err(_) => {
                        failure.set(true);
                        Complex64::new(0.0, 0.0)
                    }
                }
            },
            0.0,
            1.0,
            &[],
            &quad,
        )?;
        if failure.get() || !r.converged {
            return Err(Error::NonConvergence {
                what: "Euler integral of a hypergeometric series",
                limit: 2000,
            });
        }
        Ok(SeriesSum {
            value: norm * r.value,
            tail_estimate: (norm * r.err_estimate).norm(),
            terms: r.evaluations,
        })
    })())
}

/// Sum at `z = 1` for `p = q + 1`, requiring `Re(σ) > 0`.
fn unit_argument(spec: &HypergeometricSpec, ctl: &SeriesControl) -> Result<SeriesSum> {
    let sigma = spec.excess();
    if sigma.re <= 0.0 {
        return Err(Error::NonConvergence {
            what: "hypergeometric series at unit argument",
            limit: 0,
        });
    }
    let params = Params::of(spec);
    let largest = spec
        .upper
        .iter()
        .chain(spec.lower.iter())
        .map(|a| a.norm())
        .fold(0.0_f64, f64::max);
    let mut n0 = 64usize;
    while (n0 as f64) < 8.0 * largest {
        n0 *= 2;
    }
    let mut acc = Accumulator {
        sum: ComplexDD::ONE,
        term: ComplexDD::ONE,
        n: 1,
        max_term: 1.0,
    };
    // Richardson table on the partial sums S(n0 2^j).
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut best = None::<(Complex64, f64)>;
    let mut size = n0;
    while size <= ctl.max_terms {
        extend(&params, &mut acc, size);
        let mut row = vec![acc.sum.to_c64()];
        if let Some(prev) = rows.last() {
            for j in 0..prev.len() {
                let factor = Complex64::new(2.0, 0.0).powc(sigma + j as f64);
                let v = (factor * row[j] - prev[j]) / (factor - 1.0);
                row.push(v);
            }
            let d = row.len();
            let est = (row[d - 1] - prev[d - 2]).norm();
            let value = row[d - 1];
            if best.map_or(true, |(_, e)| est < e) {
                best = Some((value, est));
            }
            if est <= ctl.tail_tol.max(4.0 * f64::EPSILON) * value.norm().max(f64::MIN_POSITIVE) && d >= 4 {
                return Ok(SeriesSum {
                    value,
                    tail_estimate: est,
                    terms: size,
                });
            }
        }
        rows.push(row);
        size *= 2;
    }
    match best {
        Some((value, est)) if est <= 1e-12 * value.norm() => Ok(SeriesSum {
            value,
            tail_estimate: est,
            terms: size / 2,
        }),
        _ => Err(Error::NonConvergence {
            what: "hypergeometric series at unit argument",
            limit: ctl.max_terms,
        }),
    }
}
