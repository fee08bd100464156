//! Alternating binomial sums Σ_{k=n0}^{n} (-1)^k C(n,k) f(k).
//!
//! The binomial mass is 2^n, so the sum can cancel n bits. Terms are
//! evaluated under `ctx.for_cancellation(n + 2)`; binomials are exact.

use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::precision::{log2_abs, PrecisionContext};

/// A sequence f(k) that can be evaluated at any requested precision.
pub trait SequenceProvider: Sync {
    /// f(k), accurate to about `ctx.target_bits()` relative bits.
    fn eval(&self, k: u64, ctx: &PrecisionContext) -> Result<Float>;

    /// f(lo), ..., f(hi).
    fn eval_range(&self, lo: u64, hi: u64, ctx: &PrecisionContext) -> Result<Vec<Float>> {
        (lo..=hi).map(|k| self.eval(k, ctx)).collect()
    }
}

/// Adapts a closure into a [`SequenceProvider`].
pub struct FnSequence<F>(pub F);

impl<F> SequenceProvider for FnSequence<F>
where
    F: Fn(u64, &PrecisionContext) -> Result<Float> + Sync,
{
    fn eval(&self, k: u64, ctx: &PrecisionContext) -> Result<Float> {
        (self.0)(k, ctx)
    }
}

/// Values precomputed once at `bits` precision, f(offset + i) = values[i].
pub struct CachedSequence {
    offset: u64,
    bits: u32,
    values: Vec<Float>,
}

impl CachedSequence {
    pub fn new(offset: u64, bits: u32, values: Vec<Float>) -> Self {
        CachedSequence { offset, bits, values }
    }

    pub fn accuracy_bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl SequenceProvider for CachedSequence {
    fn eval(&self, k: u64, ctx: &PrecisionContext) -> Result<Float> {
        if ctx.target_bits() > self.bits {
            return Err(Error::PrecisionExhausted { op: "cached sequence", attempts: 0 });
        }
        let i = k.checked_sub(self.offset).map(|i| i as usize).filter(|&i| i < self.values.len());
        match i {
            Some(i) => Ok(ctx.round(&self.values[i])),
            None => Err(Error::InvalidArgument(format!("index {k} outside cached range"))),
        }
    }
}

/// A sum together with an a-priori error bound.
#[derive(Clone, Debug)]
pub struct AltSum {
    pub value: Float,
    pub error_bound: Float,
    /// Precision the terms were accumulated at.
    pub working_bits: u32,
    pub escalations: u32,
}

/// Σ_{k=n0}^{n} (-1)^k C(n,k) f(k), accurate to 2^-target_bits relative to
/// max(|sum|, max |f(k)|).
pub fn alt_binomial_sum<S: SequenceProvider + ?Sized>(
    f: &S,
    n: u64,
    n0: u64,
    ctx: &PrecisionContext,
) -> Result<Float> {
    Ok(alt_binomial_sum_detailed(f, n, n0, ctx)?.value)
}

pub fn alt_binomial_sum_detailed<S: SequenceProvider + ?Sized>(
    f: &S,
    n: u64,
    n0: u64,
    ctx: &PrecisionContext,
) -> Result<AltSum> {
    if n0 > n {
        return Ok(AltSum {
            value: ctx.zero(),
            error_bound: ctx.zero(),
            working_bits: ctx.working_bits(),
            escalations: 0,
        });
    }
    let lost = u32::try_from(n).map_err(|_| Error::InvalidArgument("n too large".into()))?;
    let base = ctx.for_cancellation(lost.saturating_add(2));
    for attempt in 0..=ctx.max_escalations() {
        let c = base.escalation(attempt);
        let vals = f.eval_range(n0, n, &c)?;
        let s = accumulate(&vals, n, n0, &c);
        if !ctx.escalates() {
            return Ok(AltSum { escalations: 0, ..s });
        }
        // Accuracy is relative to max(|value|, max |f|); a sum that cancels
        // below the size of its terms cannot be certified relatively.
        let max_f = vals.iter().map(log2_abs).fold(f64::NEG_INFINITY, f64::max);
        let scale = log2_abs(&s.value).max(max_f);
        if log2_abs(&s.error_bound) <= scale - ctx.target_bits() as f64 {
            return Ok(AltSum { escalations: attempt, ..s });
        }
        log::debug!("alt_binomial_sum(n = {n}): escalating past {} bits", c.working_bits());
    }
    Err(Error::PrecisionExhausted { op: "alt_binomial_sum", attempts: ctx.max_escalations() })
}

fn accumulate(vals: &[Float], n: u64, n0: u64, c: &PrecisionContext) -> AltSum {
    let w = c.working_bits();
    let mut binom = Integer::from(Integer::binomial_u(n as u32, n0 as u32));
    let mut acc = Float::new(w);
    let mut mass = Float::new(64);
    for (i, v) in vals.iter().enumerate() {
        let k = n0 + i as u64;
        let t = Float::with_val(w, v * &binom);
        mass += Float::with_val(64, t.abs_ref());
        if k % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
        if k < n {
            binom *= n - k;
            binom /= k + 1;
        }
    }
    // Term errors 2^-target each, plus one rounding per product and addition.
    let term_err = Float::with_val(64, &mass) >> (c.target_bits() as i32 - 2);
    let round_err = Float::with_val(64, &mass) * (2 * vals.len() as u64 + 2) >> (w as i32);
    AltSum {
        value: acc,
        error_bound: term_err + round_err,
        working_bits: w,
        escalations: 0,
    }
}
