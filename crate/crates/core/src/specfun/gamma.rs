//! log Γ and ψ.

use rug::float::Constant;
use rug::Float;

use super::bernoulli::bernoulli_even;
use crate::complex::ApComplex;
use crate::error::{Error, Result};
use crate::precision::{pow2, PrecisionContext};

/// Default |z| above which the Stirling series is used directly.
pub fn default_stirling_threshold(ctx: &PrecisionContext) -> f64 {
    (0.12 * ctx.working_bits() as f64).max(20.0)
}

/// Principal branch of log Γ(z).
pub fn log_gamma(z: &ApComplex, ctx: &PrecisionContext) -> Result<ApComplex> {
    log_gamma_with_threshold(z, default_stirling_threshold(ctx), ctx)
}

/// As [`log_gamma`], shifting z up until |z| >= `threshold` before the
/// Stirling series is summed.
pub fn log_gamma_with_threshold(
    z: &ApComplex,
    threshold: f64,
    ctx: &PrecisionContext,
) -> Result<ApComplex> {
    if z.im.is_zero() && z.re <= 0 && z.re.is_integer() {
        return Err(Error::Pole(format!("log Γ at non-positive integer {}", z.re.to_f64())));
    }
    let mut threshold = threshold.max(1.0);
    for attempt in 0..=ctx.max_escalations() {
        if let Some(v) = stirling_shifted(z, threshold, ctx) {
            return Ok(v);
        }
        log::debug!("log_gamma: raising Stirling threshold (attempt {attempt})");
        threshold *= 2.0;
    }
    Err(Error::PrecisionExhausted { op: "log_gamma", attempts: ctx.max_escalations() })
}

fn stirling_shifted(z: &ApComplex, threshold: f64, ctx: &PrecisionContext) -> Option<ApComplex> {
    let prec = ctx.working_bits();
    let mut w = ApComplex::new(ctx.round(&z.re), ctx.round(&z.im));
    // log Γ(z) = log Γ(z + N) - Σ_{j<N} log(z + j), each log principal.
    let mut shift = ApComplex::from_real(ctx.zero());
    let one = ctx.real(1);
    while w.abs().to_f64() < threshold {
        shift = shift.add(&w.ln());
        w = w.add_real(&one);
    }
    let series = stirling_series(&w, prec)?;
    Some(series.sub(&shift))
}

/// (w - 1/2) log w - w + log(2π)/2 + Σ B_{2j}/(2j(2j-1) w^{2j-1}), summed
/// until the terms fall below 2^-prec relative, or None if they start to grow.
fn stirling_series(w: &ApComplex, prec: u32) -> Option<ApComplex> {
    let ln_w = w.ln();
    let half = Float::with_val(prec, 0.5);
    let mut acc = w.add_real(&-half.clone()).mul(&ln_w).sub(w);
    let ln2pi = Float::with_val(prec, Constant::Pi) * 2u32;
    acc = acc.add_real(&(ln2pi.ln() * half));

    let tol = pow2(prec, -(prec as i32)) * acc.abs().max(&Float::with_val(prec, 1));
    let inv = w.recip();
    let inv2 = inv.mul(&inv);
    let mut pw = inv.clone();
    let mut prev = Float::with_val(prec, f64::INFINITY);
    let mut j = 1usize;
    loop {
        let b = bernoulli_even(j);
        let c = Float::with_val(prec, &b[j - 1]) / ((2 * j * (2 * j - 1)) as u64);
        let term = pw.mul_real(&c);
        let size = term.abs();
        if size < tol {
            return Some(acc.add(&term));
        }
        if size > prev {
            return None;
        }
        acc = acc.add(&term);
        prev = size;
        pw = pw.mul(&inv2);
        j += 1;
    }
}

/// Default point above which ψ uses its asymptotic expansion.
fn digamma_threshold(ctx: &PrecisionContext) -> f64 {
    (0.12 * ctx.working_bits() as f64).max(16.0)
}

/// ψ(z) for real z > 0.
pub fn digamma(z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if !(z.is_finite() && *z > 0) {
        return Err(Error::Domain(format!("digamma requires z > 0, got {}", z.to_f64())));
    }
    let prec = ctx.working_bits();
    let mut threshold = digamma_threshold(ctx);
    for _ in 0..=ctx.max_escalations() {
        let mut w = ctx.round(z);
        let mut shift = ctx.zero();
        while w.to_f64() < threshold {
            shift += Float::with_val(prec, w.recip_ref());
            w += 1u32;
        }
        if let Some(v) = digamma_asymptotic(&w, prec) {
            return Ok(v - shift);
        }
        threshold *= 2.0;
    }
    Err(Error::PrecisionExhausted { op: "digamma", attempts: ctx.max_escalations() })
}

/// ψ(w) ~ log w - 1/(2w) - Σ B_{2j}/(2j w^{2j}).
fn digamma_asymptotic(w: &Float, prec: u32) -> Option<Float> {
    let mut acc = Float::with_val(prec, w.ln_ref()) - Float::with_val(prec, w.recip_ref()) / 2u32;
    let tol = pow2(prec, -(prec as i32)) * Float::with_val(prec, acc.abs_ref()).max(&Float::with_val(prec, 1));
    let inv2 = Float::with_val(prec, w.square_ref()).recip();
    let mut pw = inv2.clone();
    let mut prev = Float::with_val(prec, f64::INFINITY);
    let mut j = 1usize;
    loop {
        let b = bernoulli_even(j);
        let term = Float::with_val(prec, &b[j - 1]) * &pw / (2 * j as u64);
        let size = Float::with_val(prec, term.abs_ref());
        if size < tol {
            return Some(acc - term);
        }
        if size > prev {
            return None;
        }
        acc -= term;
        prev = size;
        pw *= &inv2;
        j += 1;
    }
}

/// Partial sum -γ - 1/z + Σ_{l=1}^{L} z/(l(l+z)) of the classical series for
/// ψ(z). The neglected tail is at most z/L.
pub fn digamma_series(z: &Float, terms: u64, prec: u32) -> Float {
    let mut acc = -Float::with_val(prec, Constant::Euler) - Float::with_val(prec, z.recip_ref());
    let mut s = Float::with_val(prec, 0);
    for l in 1..=terms {
        let den = Float::with_val(prec, z + l) * l;
        s += Float::with_val(prec, z / &den);
    }
    acc += s;
    acc
}
