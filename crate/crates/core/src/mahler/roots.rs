//! Roots of univariate complex polynomials.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

const ABERTH_ITERATIONS: usize = 500;

/// Coefficients are constant-first; the leading coefficient must be nonzero.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots by Aberth–Ehrlich simultaneous iteration, falling back to the
/// eigenvalues of the companion matrix when the iteration stalls.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    if coeffs[degree] == Complex64::new(0.0, 0.0) {
        return Err(Error::RootFinding("leading coefficient is zero".into()));
    }
    // factor out roots at the origin
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros..];
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    match aberth(reduced) {
        Some(r) => out.extend(r),
        None => out.extend(companion(reduced)?),
    }
    Ok(out)
}

fn aberth(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[n];
    // starting circle from the geometric mean of the root moduli
    let radius = (coeffs[0].norm() / lead.norm()).powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(radius, std::f64::consts::TAU * (j as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..ABERTH_ITERATIONS {
        let mut done = true;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            // stop on this root once |p| is at the rounding level of the evaluation
            let bound: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * z[i].norm() + c.norm());
            if p.norm() <= 8.0 * f64::EPSILON * bound {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return None;
            }
            z[i] -= step;
            if step.norm() > 1e-15 * z[i].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            return Some(z);
        }
    }
    None
}

fn companion(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    let schur = nalgebra::linalg::Schur::try_new(m, 1e-15, 10_000)
        .ok_or_else(|| Error::RootFinding("companion matrix Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_roots(rs: &[Complex64]) -> Vec<Complex64> {
        let mut p = vec![c(1.0, 0.0)];
        for &r in rs {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                next[i] -= a * r;
                next[i + 1] += a;
            }
            p = next;
        }
        p
    }

    fn matched(found: &[Complex64], expected: &[Complex64], tol: f64) -> bool {
        let mut used = vec![false; found.len()];
        expected.iter().all(|e| {
            let best = (0..found.len())
                .filter(|&i| !used[i])
                .min_by(|&a, &b| (found[a] - e).norm().total_cmp(&(found[b] - e).norm()));
            match best {
                Some(i) if (found[i] - e).norm() <= tol => {
                    used[i] = true;
                    true
                }
                _ => false,
            }
        })
    }

    #[test]
    fn recovers_known_roots() {
        let rs = [c(2.0, 0.0), c(-0.5, 0.3), c(0.1, -0.9), c(0.0, 0.0), c(3.0, 4.0)];
        let found = roots(&from_roots(&rs)).unwrap();
        assert!(matched(&found, &rs, 1e-12), "{found:?}");
    }

    #[test]
    fn companion_agrees_with_aberth() {
        let rs = [c(1.5, 0.0), c(-0.25, 0.75), c(0.6, 0.6), c(-2.0, -1.0)];
        let p = from_roots(&rs);
        assert!(matched(&companion(&p).unwrap(), &rs, 1e-10));
        assert!(matched(&aberth(&p).unwrap(), &rs, 1e-12));
    }

    #[test]
    fn rejects_zero_leading_coefficient() {
        assert!(roots(&[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }
}
