//! Named self-check suites. Each check pairs a residual with the tolerance it
//! must meet; Monte Carlo checks report a z-score against a bound in standard
//! errors instead.

use crate::densities::{coeff_c, coeff_d, f_density, g_density, CoefficientIndex};
use crate::error::{domain, Result};
use crate::mahler::{
    c_sqrt2, hypergeometric_combination_residual, md_qk, md_xyk, xyk_difference_residual, ArealQkRoute,
    ArealXykRoute,
};
use crate::modular::{c0_lattice, c0_qseries, default_terms, solve_tk, LatticeCutoff};
use crate::walks::{mc_areal_mahler_qk, mc_areal_mahler_xyk, mc_moment, MCConfig, MomentFamily};
use crate::zetamahler::zd_xyk;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual: residual.abs(), tolerance }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// `m - m_𝔻 - difference term` for `x + y + k` on a grid in `(0, 2)`,
    /// and agreement of the areal routes.
    LinearDifference,
    /// Three linear relations among the moments `c_n`, `d_n`, `F`, `G`.
    MomentIdentities,
    /// The integration-by-parts relations for `n = 1, 2`.
    IntegrationByParts,
    /// The closed form of the `₃F₂` combination on `z ∈ {0.1, …, 0.9}`.
    HypergeometricCombination,
    /// The `₄F₃(1)` combination equal to `log 2 / 4`.
    RootTwoConstant,
    /// `c₀(k)` by quadrature, q-series and lattice sum.
    CycleVolume,
    /// Monte Carlo estimates against closed forms.
    MonteCarlo,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::LinearDifference,
        Suite::MomentIdentities,
        Suite::IntegrationByParts,
        Suite::HypergeometricCombination,
        Suite::RootTwoConstant,
        Suite::CycleVolume,
        Suite::MonteCarlo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::LinearDifference => "linear-difference",
            Suite::MomentIdentities => "moment-identities",
            Suite::IntegrationByParts => "ibp",
            Suite::HypergeometricCombination => "hyp-combination",
            Suite::RootTwoConstant => "root-two-constant",
            Suite::CycleVolume => "cycle-volume",
            Suite::MonteCarlo => "montecarlo",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Parameters shared by the suites; each suite reads only what it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub grid: usize,
    pub k_values: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
    /// Bound on `|estimate - exact|` in standard errors.
    pub sigmas: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { grid: 200, k_values: vec![0.5, 1.0, 2.0, 3.0], samples: 1_000_000, seed: 42, sigmas: 4.0 }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<Check>> {
    match suite {
        Suite::LinearDifference => linear_difference(opts.grid),
        Suite::MomentIdentities => opts.k_values.iter().map(|&k| moment_identities(k)).collect::<Result<Vec<_>>>().map(flatten),
        Suite::IntegrationByParts => {
            opts.k_values.iter().map(|&k| integration_by_parts(k)).collect::<Result<Vec<_>>>().map(flatten)
        }
        Suite::HypergeometricCombination => (1..=9)
            .map(|i| {
                let z = 0.1 * i as f64;
                Ok(Check::new(format!("z={z:.1}"), hypergeometric_combination_residual(z)?, 1e-9))
            })
            .collect(),
        Suite::RootTwoConstant => Ok(vec![Check::new("C_sqrt2 - log2/4", c_sqrt2()? - std::f64::consts::LN_2 / 4.0, 1e-9)]),
        Suite::CycleVolume => cycle_volume(&opts.k_values),
        Suite::MonteCarlo => monte_carlo(opts),
    }
}

fn flatten(v: Vec<Vec<Check>>) -> Vec<Check> {
    v.into_iter().flatten().collect()
}

fn linear_difference(grid: usize) -> Result<Vec<Check>> {
    if grid == 0 {
        return Err(domain("grid must have at least one point"));
    }
    let mut residual: f64 = 0.0;
    let mut spread: f64 = 0.0;
    for i in 1..=grid {
        let k = 2.0 * i as f64 / (grid + 1) as f64;
        residual = residual.max(xyk_difference_residual(k)?.abs());
        let reference = md_xyk(k, ArealXykRoute::Dilogarithm)?.value;
        for route in [ArealXykRoute::Hypergeometric, ArealXykRoute::Difference] {
            spread = spread.max((md_xyk(k, route)?.value - reference).abs());
        }
    }
    Ok(vec![
        Check::new(format!("max difference residual over {grid} points"), residual, 1e-10),
        Check::new(format!("max route disagreement over {grid} points"), spread, 1e-10),
    ])
}

struct Moments {
    k: f64,
    f: f64,
    g: f64,
    log_k: f64,
}

impl Moments {
    fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k < 4.0) {
            return Err(domain(format!("moment identities need 0 < k < 4, got {k}")));
        }
        Ok(Self { k, f: f_density(k)?, g: g_density(k)?, log_k: k.ln() })
    }

    fn c(&self, n: i32) -> Result<f64> {
        coeff_c(CoefficientIndex::plain(n), self.k)
    }
    fn d(&self, n: i32) -> Result<f64> {
        coeff_d(CoefficientIndex::plain(n), self.k)
    }
    fn cp(&self, n: i32) -> Result<f64> {
        coeff_c(CoefficientIndex::primed(n), self.k)
    }
    fn dp(&self, n: i32) -> Result<f64> {
        coeff_d(CoefficientIndex::primed(n), self.k)
    }
}

/// Residuals of the three linear relations among `c₀…c₂`, `d₀, d₁`, `F(k)`, `G(k)`.
pub fn moment_identities(k: f64) -> Result<Vec<Check>> {
    let m = Moments::new(k)?;
    let (f, g, lk) = (m.f, m.g, m.log_k);
    let (k2, k3, k5) = (k * k, k.powi(3), k.powi(5));
    let (c0, c1, c2, d0, d1) = (m.c(0)?, m.c(1)?, m.c(2)?, m.d(0)?, m.d(1)?);
    let first = 20.0 / k * c0 - 3.0 * (k2 + 12.0) / k3 * c1 + 4.0 / k3 * c2 + 8.0 / k * d0 - 2.0 / k * d1
        + (8.0 - k2) * lk * f
        + 8.0 * lk * g;
    let second = 120.0 / k3 * c0 - 30.0 * (k2 + 12.0) / k5 * c1 + 40.0 / k5 * c2 - 5.0 * f + 80.0 / k2 * g;
    let third = 8.0 / k * c0 - 2.0 / k * c1 + (8.0 - k2) * f + 8.0 * g;
    Ok([first, second, third]
        .into_iter()
        .enumerate()
        .map(|(i, r)| Check::new(format!("k={k} identity {}", i + 1), r, 1e-9))
        .collect())
}

/// Residuals of the four integration-by-parts relations linking
/// `c_n, d_n, c'_n, d'_n` to lower indices, for `n = 1, 2`.
pub fn integration_by_parts(k: f64) -> Result<Vec<Check>> {
    let m = Moments::new(k)?;
    let (f, g, lk) = (m.f, m.g, m.log_k);
    let mut out = Vec::new();
    for n in [1, 2] {
        let kk = k.powi(2 * n + 1);
        let w = (2 * n - 1) as f64;
        let (c, d, cp, dp, cp1, dp1) = (m.c(n)?, m.d(n)?, m.cp(n)?, m.dp(n)?, m.cp(n - 1)?, m.dp(n - 1)?);
        let r1 = c / kk - (16.0 / (k * k) * g - f - w / kk * (c - 16.0 * cp1));
        let r2 = d / kk - ((16.0 * cp1 - c) / kk - w / kk * (d - 16.0 * dp1) + lk * (16.0 / (k * k) * g - f));
        let sum_c = c + cp - 32.0 * cp1;
        let r3 = cp / kk - ((32.0 / (k * k) - 1.0) * g / 3.0 - f / 3.0 - w / (3.0 * kk) * sum_c);
        let sum_d = d + dp - 32.0 * dp1;
        let r4 = dp / kk - (-sum_c / (3.0 * kk) - w / (3.0 * kk) * sum_d + lk / 3.0 * ((32.0 / (k * k) - 1.0) * g - f));
        for (label, r) in [("c", r1), ("d", r2), ("c'", r3), ("d'", r4)] {
            out.push(Check::new(format!("k={k} n={n} {label}"), r, 1e-9));
        }
    }
    Ok(out)
}

fn cycle_volume(k_values: &[f64]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &k in k_values {
        if !(k > 0.0 && k < 4.0) {
            continue;
        }
        let quad = coeff_c(CoefficientIndex::plain(0), k)?;
        let pt = solve_tk(k)?;
        let series = c0_qseries(&pt, default_terms(pt.q_k))?;
        let lattice = c0_lattice(&pt, LatticeCutoff::new(200)?);
        out.push(Check::new(format!("k={k} q-series vs quadrature"), series.value - quad, 1e-10));
        out.push(Check::new(format!("k={k} lattice(200) vs q-series"), lattice.corrected.re - series.value, 1e-4));
    }
    if out.is_empty() {
        return Err(domain("cycle-volume suite needs some k in (0, 4)"));
    }
    Ok(out)
}

fn monte_carlo(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let cfg = |offset: u64| MCConfig::with_default_batching(opts.samples, opts.seed.wrapping_add(offset));
    let mut out = Vec::new();
    for (i, k) in [0.0, 1.0, 3.0].into_iter().enumerate() {
        let exact = md_xyk(k, ArealXykRoute::Dilogarithm)?.value;
        let est = mc_areal_mahler_xyk(k, &cfg(i as u64)?)?;
        out.push(Check::new(format!("m_D(x+y+{k}) z-score"), est.z_score(exact), opts.sigmas));
    }
    for (i, k) in [1.0, 2.0].into_iter().enumerate() {
        let exact = md_qk(k, ArealQkRoute::Theorem)?.value;
        let est = mc_areal_mahler_qk(k, &cfg(10 + i as u64)?)?;
        out.push(Check::new(format!("m_D(Q_{k}) z-score"), est.z_score(exact), opts.sigmas));
    }
    for (i, (s, k)) in [(1.0, 1.0), (3.0, 0.5)].into_iter().enumerate() {
        let exact = zd_xyk(Complex64::new(s, 0.0), k)?.re;
        let est = mc_moment(s, k, MomentFamily::LinearForm, &cfg(20 + i as u64)?)?;
        out.push(Check::new(format!("Z_D({s}, x+y+{k}) z-score"), est.z_score(exact), opts.sigmas));
    }
    Ok(out)
}
