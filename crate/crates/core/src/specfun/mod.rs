//! Arbitrary-precision special functions.

pub mod bernoulli;
pub mod gamma;
pub mod harmonic;
pub mod hurwitz;
pub mod sieve;
pub mod stieltjes;

pub use bernoulli::bernoulli;
pub use gamma::{digamma, log_gamma};
pub use harmonic::harmonic;
pub use hurwitz::{hurwitz_integer_values, hurwitz_zeta, hurwitz_zeta_real};
pub use sieve::{von_mangoldt_sieve, PrimeSieve};
pub use stieltjes::{generalized_stieltjes, stieltjes};
