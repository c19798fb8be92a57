//! Values `L(χ, 2)` for the odd characters of conductor 3 and 4.
//!
//! Both are finite combinations of Hurwitz zeta values
//! `ζ(2, r/q) / q²`, each summed directly up to a cutoff and completed with
//! the Euler–Maclaurin tail.

/// `B_{2k}`, k = 1..8.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

const DIRECT_TERMS: usize = 24;

/// Hurwitz zeta `ζ(2, a) = Σ_{n≥0} (n+a)^-2` for `a > 0`.
pub fn hurwitz_zeta2(a: f64) -> f64 {
    let mut head = 0.0;
    for n in (0..DIRECT_TERMS).rev() {
        let x = n as f64 + a;
        head += 1.0 / (x * x);
    }
    let x = DIRECT_TERMS as f64 + a;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut tail = inv + 0.5 * inv2;
    let mut pow = inv2 * inv;
    for b in BERNOULLI_EVEN {
        tail += b * pow;
        pow *= inv2;
    }
    head + tail
}

/// `L(χ₋₃, 2) = Σ χ₋₃(n)/n²`.
pub fn l_chi3_2() -> f64 {
    (hurwitz_zeta2(1.0 / 3.0) - hurwitz_zeta2(2.0 / 3.0)) / 9.0
}

/// `L(χ₋₄, 2)`, Catalan's constant.
pub fn l_chi4_2() -> f64 {
    (hurwitz_zeta2(0.25) - hurwitz_zeta2(0.75)) / 16.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two() {
        let z = hurwitz_zeta2(1.0);
        assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn catalan_by_accelerated_alternating_series() {
        // Euler transform of Σ (-1)^n / (2n+1)² via averaged partial sums
        let n = 60;
        let mut partial = vec![0.0f64; n];
        let mut s = 0.0;
        for (k, p) in partial.iter_mut().enumerate() {
            let t = if k % 2 == 0 { 1.0 } else { -1.0 } / ((2 * k + 1) as f64).powi(2);
            s += t;
            *p = s;
        }
        for _ in 0..40 {
            partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        }
        let accel = *partial.last().unwrap();
        assert!((accel - 0.915_965_594_177_219).abs() < 1e-14);
        assert!((l_chi4_2() - accel).abs() < 1e-15);
    }

    #[test]
    fn conductor_three_by_brute_force() {
        // partial sums of Σ χ₋₃(n)/n² with the tail bounded by 1/N
        let mut s = 0.0;
        let n_max = 3_000_000u64;
        for n in 1..=n_max {
            let chi = match n % 3 {
                1 => 1.0,
                2 => -1.0,
                _ => 0.0,
            };
            s += chi / (n as f64).powi(2);
        }
        assert!((l_chi3_2() - s).abs() < 1e-12);
        assert!((l_chi3_2() - 0.781_302_412_896_486_3).abs() < 1e-15);
    }
}
