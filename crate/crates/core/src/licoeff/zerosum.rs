//! Truncated zero sums λ_F(n, T) = Σ_{|γ|<=T} [1 - (1 - 1/ρ)^{-n}] over
//! zeros ρ = 1/2 + iγ. Pairing ρ with its conjugate gives the real term
//! 2(1 - cos nφ) = 4 sin²(nφ/2) with φ = 2 atan(1/(2γ)).

use rayon::prelude::*;
use rug::Float;

use crate::complex::ApComplex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::selberg::ZeroTable;

/// Safety factor in the tail bound.
pub const C_TAIL: f64 = 4.0;

#[derive(Clone, Debug)]
pub struct ZeroSum {
    pub n: i64,
    pub value: Float,
    pub tail_bound: Float,
    /// Number of zeros with 0 < γ <= T.
    pub terms: usize,
    /// T exceeded the table's largest ordinate.
    pub truncated_at_table_end: bool,
}

/// C_TAIL · n² log(T/2π)/(2πT), with the logarithm floored at 1.
pub fn zero_sum_tail_bound(n: i64, t: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let n2 = (n as f64) * (n as f64);
    C_TAIL * n2 * (t / two_pi).ln().max(1.0) / (two_pi * t)
}

/// Half-angles θ_j = atan(1/(2γ_j)) for the zeros up to T, shared across n.
pub struct ZeroSumEvaluator {
    thetas: Vec<Float>,
    t_eff: f64,
    truncated_at_table_end: bool,
    ctx: PrecisionContext,
}

impl ZeroSumEvaluator {
    pub fn new(zeros: &ZeroTable, t: f64, ctx: &PrecisionContext) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::EmptyZeroTable);
        }
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!("truncation height T = {t} must be positive")));
        }
        let max = zeros.max_ordinate();
        let truncated = t > max;
        if truncated {
            log::warn!(
                "T = {t} exceeds the last ordinate {max} of {}; the tail bound uses T = {max}",
                zeros.label()
            );
        }
        // The sums cancel by up to ~2 log2 n bits; the guard band covers that.
        let w = ctx.working_bits() + 64;
        let count = zeros.count_up_to(t);
        let thetas = zeros.ordinates()[..count]
            .par_iter()
            .map(|g| (Float::with_val(w, g) * 2u32).recip().atan())
            .collect();
        Ok(ZeroSumEvaluator { thetas, t_eff: t.min(max), truncated_at_table_end: truncated, ctx: *ctx })
    }

    pub fn terms(&self) -> usize {
        self.thetas.len()
    }

    fn prec(&self) -> u32 {
        self.ctx.working_bits() + 64
    }

    fn finish(&self, n: i64, acc: Float) -> ZeroSum {
        ZeroSum {
            n,
            value: self.ctx.round(&acc),
            tail_bound: self.ctx.real(zero_sum_tail_bound(n, self.t_eff)),
            terms: self.thetas.len(),
            truncated_at_table_end: self.truncated_at_table_end,
        }
    }

    /// λ(n, T); even in n.
    pub fn eval(&self, n: i64) -> ZeroSum {
        let w = self.prec();
        if n == 0 {
            return self.finish(0, Float::new(w));
        }
        let acc = self
            .thetas
            .par_iter()
            .map(|th| {
                let s = Float::with_val(w, th * n.unsigned_abs()).sin();
                Float::with_val(w, s.square_ref()) * 4u32
            })
            .reduce(|| Float::new(w), |a, b| a + b);
        self.finish(n, acc)
    }

    /// λ(n, T) for n = 0..=n_max by rotating (cos nθ, sin nθ) one step at a time.
    pub fn sweep(&self, n_max: u64) -> Vec<ZeroSum> {
        let w = self.prec() + 32;
        let len = n_max as usize + 1;
        let zeros = || vec![Float::new(w); len];
        let acc = self
            .thetas
            .par_chunks(1024)
            .map(|chunk| {
                let mut acc = zeros();
                for th in chunk {
                    let (s1, c1) = Float::with_val(w, th).sin_cos(Float::new(w));
                    let (mut s, mut c) = (Float::new(w), Float::with_val(w, 1));
                    for slot in acc.iter_mut().skip(1) {
                        let ns = Float::with_val(w, &s * &c1) + Float::with_val(w, &c * &s1);
                        let nc = Float::with_val(w, &c * &c1) - Float::with_val(w, &s * &s1);
                        s = ns;
                        c = nc;
                        *slot += Float::with_val(w, s.square_ref()) * 4u32;
                    }
                }
                acc
            })
            .reduce(zeros, |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            });
        acc.into_iter().enumerate().map(|(n, v)| self.finish(n as i64, v)).collect()
    }
}

/// Paired zero sum λ(n, T) with its tail bound.
pub fn lambda_zero_sum(zeros: &ZeroTable, n: i64, t: f64, ctx: &PrecisionContext) -> Result<ZeroSum> {
    Ok(ZeroSumEvaluator::new(zeros, t, ctx)?.eval(n))
}

/// The same sum accumulated term by term over ρ and conj(ρ) without pairing.
/// A consistency check: the imaginary part should vanish to rounding.
pub fn lambda_zero_sum_unpaired(zeros: &ZeroTable, n: i64, t: f64, ctx: &PrecisionContext) -> Result<ApComplex> {
    if zeros.is_empty() {
        return Err(Error::EmptyZeroTable);
    }
    let w = ctx.working_bits();
    let half = Float::with_val(w, 0.5);
    let one = ApComplex::from_real(Float::with_val(w, 1));
    let count = zeros.count_up_to(t);
    let mut acc = ApComplex::from_real(Float::new(w));
    for g in &zeros.ordinates()[..count] {
        for sign in [1i32, -1] {
            let rho = ApComplex::new(half.clone(), Float::with_val(w, g * sign));
            let rho_m1 = rho.add_real(&Float::with_val(w, -1));
            // (1 - 1/ρ)^{-n} = (ρ/(ρ - 1))^n
            let base = if n >= 0 { rho.div(&rho_m1) } else { rho_m1.div(&rho) };
            acc = acc.add(&one.sub(&base.powu(n.unsigned_abs() as u32)));
        }
    }
    Ok(acc)
}
