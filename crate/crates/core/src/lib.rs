//! Generalized Li coefficients for L-functions in the Selberg class.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] arbitrary-precision special functions (log Γ, ψ, Hurwitz ζ,
//!   Bernoulli and harmonic numbers, Stieltjes constants, a prime sieve).
//! * [`nrsum`] alternating binomial sums, the Hurwitz binomial sums `H_n(m,k)`
//!   with their closed form and saddle-point correction, and a contour-integral
//!   cross-check.
//! * [`selberg`] descriptors of L-functions, presets and zero tables.
//! * [`licoeff`] λ_F(n) by zero sums, by the arithmetic formula and by the
//!   asymptotic law.
//!
//! Every numeric routine takes an explicit [`PrecisionContext`].

pub mod complex;
pub mod error;
pub mod licoeff;
pub mod nrsum;
pub mod precision;
pub mod selberg;
pub mod specfun;

pub use complex::{ApComplex, ApReal};
pub use error::{Error, Result};
pub use precision::{EscalationPolicy, PrecisionContext};
