//! Complete elliptic integrals by the arithmetic-geometric mean.
//!
//! The parameter convention is `m = k²`:
//!
//! ```text
//! K(m) = ∫₀^{π/2} dθ / √(1 - m sin²θ)
//! E(m) = ∫₀^{π/2} √(1 - m sin²θ) dθ
//! ```
//!
//! The `_complement` variants take `1 - m` directly, which keeps full
//! relative accuracy near `m = 1` where forming `1 - m` would cancel.

use crate::error::{domain, Result};
use std::f64::consts::FRAC_PI_2;

const MAX_ITER: usize = 64;

/// Returns `(K, E)` for complementary parameter `mc = 1 - m`, `mc > 0`.
fn agm_pair(mc: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = mc.sqrt();
    // c_0² = m; E = K (1 - Σ 2^{n-1} c_n²)
    let mut sum = 0.5 * (1.0 - mc);
    let mut pow = 0.5_f64;
    for _ in 0..MAX_ITER {
        let cn = 0.5 * (a - b);
        let a_next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = a_next;
        pow *= 2.0;
        sum += pow * cn * cn;
        if cn.abs() <= f64::EPSILON * a {
            break;
        }
    }
    let k = FRAC_PI_2 / a;
    (k, k * (1.0 - sum))
}

/// Complete elliptic integral of the first kind, `0 <= m < 1`.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(domain(format!("elliptic K needs 0 <= m < 1, got {m}")));
    }
    Ok(agm_pair(1.0 - m).0)
}

/// Complete elliptic integral of the second kind, `0 <= m <= 1`.
pub fn elliptic_e(m: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&m) {
        return Err(domain(format!("elliptic E needs 0 <= m <= 1, got {m}")));
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    Ok(agm_pair(1.0 - m).1)
}

/// `K(1 - mc)` for `0 < mc <= 1`.
pub fn elliptic_k_complement(mc: f64) -> Result<f64> {
    if !(mc > 0.0 && mc <= 1.0) {
        return Err(domain(format!("complementary parameter must lie in (0, 1], got {mc}")));
    }
    Ok(agm_pair(mc).0)
}

/// `E(1 - mc)` for `0 <= mc <= 1`.
pub fn elliptic_e_complement(mc: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&mc) {
        return Err(domain(format!("complementary parameter must lie in [0, 1], got {mc}")));
    }
    if mc == 0.0 {
        return Ok(1.0);
    }
    Ok(agm_pair(mc).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(elliptic_k(0.0).unwrap(), FRAC_PI_2);
        assert!((elliptic_e(0.0).unwrap() - FRAC_PI_2).abs() < 1e-16);
        assert_eq!(elliptic_e(1.0).unwrap(), 1.0);
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_e(1.5).is_err());
        assert!(elliptic_k_complement(0.0).is_err());
    }

    #[test]
    fn legendre_relation() {
        // E K' + E' K - K K' = π/2
        for &m in &[0.1, 0.5, 0.77, 1e-6] {
            let (k, e) = agm_pair(1.0 - m);
            let (kp, ep) = agm_pair(m);
            let lhs = e * kp + ep * k - k * kp;
            assert!((lhs - FRAC_PI_2).abs() < 1e-14, "m={m}: {lhs}");
        }
    }

    #[test]
    fn lemniscatic_value() {
        // K(1/2) = Γ(1/4)² / (4√π)
        let g14 = 3.625_609_908_221_908_3_f64;
        let want = g14 * g14 / (4.0 * std::f64::consts::PI.sqrt());
        assert!((elliptic_k(0.5).unwrap() - want).abs() < 1e-15 * want);
    }

    #[test]
    fn complement_near_singular_end() {
        let mc = 1e-30;
        let k = elliptic_k_complement(mc).unwrap();
        // K ~ ln(4/√mc) as mc -> 0
        let asym = (4.0 / mc.sqrt()).ln();
        assert!((k - asym).abs() < 1e-12);
    }
}
