//! Alternating binomial sums and the Hurwitz binomial sums H_n(m, k).

pub mod altsum;
pub mod hn;
pub mod residue;
pub mod saddle;

pub use altsum::{alt_binomial_sum, alt_binomial_sum_detailed, AltSum, CachedSequence, FnSequence, SequenceProvider};
pub use hn::{
    hn_breakdown, hn_closed_form, hn_direct, hn_direct_detailed, hn_main_terms, shift_correction, HnBreakdown, HnSweep,
};
pub use residue::{nr_residue_check, nr_residue_check_detailed, AnalyticKernel, KernelSequence, ResidueCheck};
pub use saddle::{an_envelope, an_error_bound, an_saddle, cos_phase, leading_phase, SaddleVariant};
