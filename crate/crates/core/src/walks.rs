//! Monte Carlo estimators over uniform points of the unit disk and circle.
//!
//! Work is split into batches. Batch `b` draws from a ChaCha8 stream with the
//! configured seed and stream number `b`, so results do not depend on thread
//! scheduling, and batch statistics are reduced in index order.
//!
//! Disk points use radius `√u`: a uniform radius would over-weight the
//! centre, since area grows like `r dr`.

use crate::error::{domain, Result};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MCConfig {
    pub samples: u64,
    pub seed: u64,
    pub batch: u64,
}

impl MCConfig {
    pub fn new(samples: u64, seed: u64, batch: u64) -> Result<Self> {
        if batch == 0 || samples < batch {
            return Err(domain(format!("need samples >= batch >= 1, got {samples} and {batch}")));
        }
        Ok(Self { samples, seed, batch })
    }

    /// Splits `samples` into batches of about `samples/64`.
    pub fn with_default_batching(samples: u64, seed: u64) -> Result<Self> {
        Self::new(samples, seed, (samples / 64).max(1))
    }

    fn batches(&self) -> u64 {
        self.samples.div_ceil(self.batch)
    }

    fn batch_len(&self, b: u64) -> u64 {
        self.batch.min(self.samples - b * self.batch)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples_used: u64,
    /// Draws discarded because the estimator was not finite there.
    pub rejected: u64,
}

impl MCEstimate {
    /// Number of standard errors between the estimate and `target`.
    pub fn z_score(&self, target: f64) -> f64 {
        if self.std_error == 0.0 {
            if self.mean == target {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - target).abs() / self.std_error
        }
    }
}

pub fn sample_disk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.gen::<f64>())
}

pub fn sample_circle<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, TAU * rng.gen::<f64>())
}

#[derive(Debug, Clone, Copy, Default)]
struct BatchStats {
    n: u64,
    sum: f64,
    sum_sq: f64,
    rejected: u64,
}

fn batch_rng(cfg: &MCConfig, b: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(b);
    rng
}

/// Runs `draw` once per sample; `None` means the draw is rejected and
/// replaced.
fn run<F>(cfg: &MCConfig, draw: F) -> Result<MCEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> Option<f64> + Sync,
{
    let stats: Vec<BatchStats> = (0..cfg.batches())
        .into_par_iter()
        .map(|b| {
            let mut rng = batch_rng(cfg, b);
            let mut st = BatchStats::default();
            while st.n < cfg.batch_len(b) {
                match draw(&mut rng) {
                    Some(v) if v.is_finite() => {
                        st.n += 1;
                        st.sum += v;
                        st.sum_sq += v * v;
                    }
                    _ => {
                        st.rejected += 1;
                        if st.rejected > 1000 + st.n {
                            break;
                        }
                    }
                }
            }
            st
        })
        .collect();
    let n: u64 = stats.iter().map(|s| s.n).sum();
    let rejected: u64 = stats.iter().map(|s| s.rejected).sum();
    if n != cfg.samples {
        return Err(domain("Monte Carlo estimator rejected too many draws"));
    }
    let total = n as f64;
    let mean = stats.iter().map(|s| s.sum).sum::<f64>() / total;
    let std_error = if stats.len() >= 2 {
        let dev: f64 = stats
            .iter()
            .map(|s| {
                let m = s.sum / s.n as f64;
                let w = s.n as f64;
                w * w * (m - mean) * (m - mean)
            })
            .sum();
        let b = stats.len() as f64;
        (dev * b / (b - 1.0)).sqrt() / total
    } else {
        let sum_sq: f64 = stats.iter().map(|s| s.sum_sq).sum();
        let var = ((sum_sq - total * mean * mean) / (total - 1.0).max(1.0)).max(0.0);
        (var / total).sqrt()
    };
    Ok(MCEstimate {
        mean,
        std_error,
        samples_used: n,
        rejected,
    })
}

fn check_k(k: f64) -> Result<()> {
    if k >= 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("k must be finite and nonnegative, got {k}")))
    }
}

/// `E log|X + Y + k|` over two independent disk points, averaged over the
/// antithetic pair `(x, y)`, `(-x, -y)`.
pub fn mc_areal_mahler_xyk(k: f64, cfg: &MCConfig) -> Result<MCEstimate> {
    check_k(k)?;
    run(cfg, |rng| {
        let s = sample_disk(rng) + sample_disk(rng);
        Some(0.5 * ((s + k).norm().ln() + (k - s).norm().ln()))
    })
}

/// Conditional expectation over `z` of `log|f + kz|` for `z` in the disk.
fn disk_average_log(f_abs: f64, k: f64) -> f64 {
    let ratio = f_abs / k;
    if ratio >= 1.0 {
        f_abs.ln()
    } else {
        k.ln() + 0.5 * (ratio * ratio - 1.0)
    }
}

/// Areal measure of `(x+1)(y+1) + kz` with the `z` average done exactly, so
/// only `x` and `y` are sampled.
pub fn mc_areal_mahler_qk(k: f64, cfg: &MCConfig) -> Result<MCEstimate> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(domain(format!("k must be positive, got {k}")));
    }
    run(cfg, |rng| {
        let (x, y) = (sample_disk(rng), sample_disk(rng));
        let plus = ((x + 1.0) * (y + 1.0)).norm();
        let minus = ((1.0 - x) * (1.0 - y)).norm();
        Some(0.5 * (disk_average_log(plus, k) + disk_average_log(minus, k)))
    })
}

/// The same measure sampled naively in all three variables.
pub fn mc_areal_mahler_qk_naive(k: f64, cfg: &MCConfig) -> Result<MCEstimate> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(domain(format!("k must be positive, got {k}")));
    }
    run(cfg, |rng| {
        let (x, y, z) = (sample_disk(rng), sample_disk(rng), sample_disk(rng));
        Some(((x + 1.0) * (y + 1.0) + k * z).norm().ln())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentFamily {
    /// `|X + Y + k|`.
    LinearForm,
    /// `|(X + 1)(Y + 1)|`; `k` is ignored.
    Product,
}

/// `E|P(X, Y)|^s` over two independent disk points.
pub fn mc_moment(s: f64, k: f64, family: MomentFamily, cfg: &MCConfig) -> Result<MCEstimate> {
    check_k(k)?;
    if !(s > -2.0) || !s.is_finite() {
        return Err(domain(format!("moment exponent must exceed -2, got {s}")));
    }
    run(cfg, |rng| {
        let (x, y) = (sample_disk(rng), sample_disk(rng));
        let v = match family {
            MomentFamily::LinearForm => (x + y + k).norm(),
            MomentFamily::Product => ((x + 1.0) * (y + 1.0)).norm(),
        };
        if s == 0.0 {
            Some(1.0)
        } else if v == 0.0 {
            None
        } else {
            Some(v.powf(s))
        }
    })
}

/// Sample moments of `|X|²` and of `X` for a sampler, used to check
/// area-uniformity.
pub fn mc_sampler_moments(on_circle: bool, cfg: &MCConfig) -> Result<(MCEstimate, MCEstimate)> {
    let sampler = |rng: &mut ChaCha8Rng| if on_circle { sample_circle(rng) } else { sample_disk(rng) };
    let second = run(cfg, |rng| Some(sampler(rng).norm_sqr()))?;
    let first = run(cfg, |rng| Some(sampler(rng).re))?;
    Ok((second, first))
}
