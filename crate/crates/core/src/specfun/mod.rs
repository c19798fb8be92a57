//! Complex special functions.
//!
//! | function | method |
//! |----------|--------|
//! | [`gamma`], [`log_gamma`], [`digamma`] | Stirling series with shift and reflection |
//! | [`pfq`] | ratio recurrence in double-double, extrapolated at `z = 1` |
//! | [`gauss_2f1`] | Pfaff and `1-z` connection formulas, logarithmic case |
//! | [`elliptic_k`], [`elliptic_e`] | arithmetic-geometric mean |
//! | [`dilog`], [`bloch_wigner`] | Bernoulli series in `-ln(1-z)` |
//! | [`l_chi3_2`], [`l_chi4_2`] | Hurwitz zeta with Euler–Maclaurin tail |

pub mod dd;
mod dilog;
mod elliptic;
mod gamma;
mod gauss;
mod hypergeometric;
mod lvalues;

pub use dilog::{bloch_wigner, dilog};
pub use elliptic::{elliptic_e, elliptic_e_complement, elliptic_k, elliptic_k_complement};
pub use gamma::{
    cot_pi, digamma, gamma, gamma_ratio, is_nonpositive_integer, log_gamma, pochhammer, rgamma, tan_pi,
};
pub use gauss::{gauss_2f1, gauss_2f1_real};
pub use hypergeometric::{hyp, hyp_real, pfq, pfq_detailed, HypergeometricSpec, SeriesControl, SeriesSum};
pub use lvalues::{hurwitz_zeta2, l_chi3_2, l_chi4_2};
