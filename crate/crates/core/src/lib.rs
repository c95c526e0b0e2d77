//! Partition functions p_[1^c 11^d](n), truncated q-series arithmetic, and
//! the machinery behind the congruences
//!
//! ```text
//! p_[1^c 11^d](11^r m + n_r) ≡ 0 (mod 11^{A_r}),   24 n_r ≡ c + 11d (mod 11^r).
//! ```
//!
//! * [`series`]: ring-generic truncated Laurent series, eta quotients, `U_p`.
//! * [`oracle`]: naive reference sequences.
//! * [`congruence`]: λ, μ, n, θ, δ, α and the exponent A_r.
//! * [`verify`]: the L_r tower and numerical certification.

pub mod congruence;
pub mod error;
pub mod oracle;
pub mod ring;
pub mod selftest;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{Integers, ModPow11, Ring, Valuation};
pub use series::{eta_quotient, euler_product, EtaQuotientSpec, QSeries};
