//! Li coefficients λ_F(n) by three routes: truncated zero sums, the
//! arithmetic formula built on η_F and H_n, and the asymptotic law.

pub mod arithmetic;
pub mod asymptotic;
pub mod eta;
pub mod records;
pub mod zerosum;

pub use arithmetic::{
    archimedean_term, ij_parameters, ij_term, ij_term_with_crossover, lambda_arithmetic, s_f, ArithmeticLi, Bounded,
    IjPath, IjTerm, N_DIRECT,
};
pub use asymptotic::lambda_asymptotic;
pub use eta::{eta_constants, EtaMethod, EtaTable, MAX_ETA_INDEX};
pub use records::{classify, li_records, positivity_report, LiRecord, Methods, Positivity, PositivityReport};
pub use zerosum::{lambda_zero_sum, lambda_zero_sum_unpaired, zero_sum_tail_bound, ZeroSum, ZeroSumEvaluator};
