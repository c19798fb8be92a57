//! Classical and areal Mahler measures of the families `x + y + k` and
//! `(x+1)(y+1) + kz`, their zeta Mahler functions, the random-walk
//! densities behind them and the modular evaluation of the Deninger-cycle
//! volume.
//!
//! Every closed form is paired with an independent route (quadrature,
//! Monte Carlo or a second closed form) so results can be cross-checked.

pub mod densities;
pub mod error;
pub mod mahler;
pub mod modular;
pub mod quadrature;
pub mod specfun;
pub mod verify;
pub mod walks;
pub mod zetamahler;

pub use error::{Error, Result};
pub use num_complex::Complex64;
