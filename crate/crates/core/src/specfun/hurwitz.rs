//! Hurwitz zeta function ζ(s, q) by Euler–Maclaurin summation.

use rug::ops::Pow;
use rug::Float;

use super::bernoulli::scaled_bernoulli_floats;
use crate::complex::ApComplex;
use crate::error::{Error, Result};
use crate::precision::{log2_abs, pow2, PrecisionContext};

/// Number of directly summed terms before the Euler–Maclaurin tail.
pub fn em_cutoff(s_im: f64, ctx: &PrecisionContext) -> u64 {
    let a = (0.7 * ctx.target_bits() as f64).ceil();
    let b = (0.12 * ctx.working_bits() as f64).ceil();
    a.max(b).max(s_im.abs().ceil()).max(10.0) as u64
}

/// ζ(s, q) = Σ_{n>=0} (n+q)^{-s}, analytically continued to s ≠ 1.
pub fn hurwitz_zeta(s: &ApComplex, q: &Float, ctx: &PrecisionContext) -> Result<ApComplex> {
    if !(q.is_finite() && *q > 0) {
        return Err(Error::Domain(format!("Hurwitz zeta needs q > 0, got {}", q.to_f64())));
    }
    if s.im.is_zero() && s.re == 1 {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    let mut n = em_cutoff(s.im.to_f64(), ctx);
    for attempt in 0..=ctx.max_escalations() {
        // Terms grow like (N+q)^{1-Re s} when Re s < 1; carry the lost bits.
        let re = s.re.to_f64();
        let extra = if re < 1.0 {
            ((1.0 - re) * ((n as f64) + q.to_f64()).log2()).ceil() as u32 + 8
        } else {
            0
        };
        let prec = ctx.working_bits() + extra;
        if let Some(v) = euler_maclaurin(s, q, n, prec) {
            let w = ctx.working_bits();
            return Ok(ApComplex::new(Float::with_val(w, &v.re), Float::with_val(w, &v.im)));
        }
        log::debug!("hurwitz_zeta: doubling cutoff {n} (attempt {attempt})");
        n *= 2;
    }
    Err(Error::PrecisionExhausted { op: "hurwitz_zeta", attempts: ctx.max_escalations() })
}

/// Real-argument convenience wrapper.
pub fn hurwitz_zeta_real(s: &Float, q: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let z = ApComplex::from_real(ctx.round(s));
    Ok(hurwitz_zeta(&z, q, ctx)?.re)
}

fn euler_maclaurin(s: &ApComplex, q: &Float, n: u64, prec: u32) -> Option<ApComplex> {
    let real = s.im.is_zero();
    let s = ApComplex::new(Float::with_val(prec, &s.re), Float::with_val(prec, &s.im));
    let neg_s = s.neg();
    let pow_neg_s = |x: &Float| -> ApComplex {
        if real {
            ApComplex::from_real(Float::with_val(prec, (&*x).pow(&neg_s.re)))
        } else {
            neg_s.exp_base(&Float::with_val(prec, x.ln_ref()))
        }
    };

    let mut acc = ApComplex::from_real(Float::new(prec));
    for j in 0..n {
        let x = Float::with_val(prec, q + j);
        acc = acc.add(&pow_neg_s(&x));
    }
    let a = Float::with_val(prec, q + n);
    let a_neg_s = pow_neg_s(&a);
    let one = Float::with_val(prec, 1);
    // a^{1-s}/(s-1) + a^{-s}/2
    let s_minus_1 = s.add_real(&-one.clone());
    acc = acc.add(&a_neg_s.mul_real(&a).div(&s_minus_1));
    acc = acc.add(&a_neg_s.mul_real(&Float::with_val(prec, 0.5)));

    let eps = pow2(prec, -(prec as i32));
    let inv_a = Float::with_val(prec, a.recip_ref());
    let inv_a2 = Float::with_val(prec, inv_a.square_ref());
    // R_j = (s)_{2j-1} a^{-s-2j+1}
    let mut r = s.mul(&a_neg_s).mul_real(&inv_a);
    let mut prev = f64::INFINITY;
    let mut batch = 32usize;
    let mut b = scaled_bernoulli_floats(batch, prec);
    let mut j = 1usize;
    loop {
        if j > b.len() {
            batch *= 2;
            b = scaled_bernoulli_floats(batch, prec);
        }
        let term = r.mul_real(&b[j - 1]);
        let size = log2_abs(&term.max_abs_component());
        if size == f64::NEG_INFINITY {
            return Some(acc);
        }
        let scale = log2_abs(&acc.max_abs_component());
        if size < log2_abs(&eps) + scale {
            return Some(acc.add(&term));
        }
        if size > prev && j > 2 {
            return None;
        }
        acc = acc.add(&term);
        prev = size;
        // (s)_{2j+1} = (s)_{2j-1} (s+2j-1)(s+2j)
        let f1 = s.add_real(&Float::with_val(prec, 2 * j - 1));
        let f2 = s.add_real(&Float::with_val(prec, 2 * j));
        r = r.mul(&f1).mul(&f2).mul_real(&inv_a2);
        j += 1;
    }
}

/// ζ(l, q) for l = 2..=lmax (entry l-2), sharing powers across l.
///
/// For each l the direct sum stops once Σ_{i>=j}(i+q)^{-l} is negligible;
/// otherwise the tail is closed by Euler–Maclaurin at the usual cutoff.
pub fn hurwitz_integer_values(q: &Float, lmax: u32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if !(q.is_finite() && *q > 0) {
        return Err(Error::Domain(format!("Hurwitz zeta needs q > 0, got {}", q.to_f64())));
    }
    if lmax < 2 {
        return Ok(Vec::new());
    }
    let prec = ctx.working_bits();
    let n = em_cutoff(0.0, ctx) as usize;
    let eps_log2 = -(prec as f64);
    let inv: Vec<Float> = (0..n).map(|j| Float::with_val(prec, Float::with_val(prec, q + j as u64).recip_ref())).collect();
    let mut pw: Vec<Float> = inv.clone();
    let mut active = n;

    let a = Float::with_val(prec, q + n as u64);
    let inv_a = Float::with_val(prec, a.recip_ref());
    let inv_a2 = Float::with_val(prec, inv_a.square_ref());
    let mut a_pow = inv_a.clone(); // a^{-l}
    let mut b = scaled_bernoulli_floats(64, prec);

    let mut out = Vec::with_capacity(lmax as usize - 1);
    for l in 2..=lmax {
        a_pow *= &inv_a;
        let mut sum = Float::new(prec);
        let mut cut = None;
        for j in 0..active {
            pw[j] *= &inv[j];
            // Tail bound (j+q)^{-l} (1 + (j+q)/(l-1)).
            if j > 0 {
                let x = Float::with_val(prec, q + j as u64).to_f64();
                let bound = log2_abs(&pw[j]) + (1.0 + x / (l - 1) as f64).log2();
                if bound < eps_log2 + log2_abs(&sum) {
                    cut = Some(j);
                    break;
                }
            }
            sum += &pw[j];
        }
        if let Some(j) = cut {
            active = j;
            out.push(sum);
            continue;
        }
        // Euler–Maclaurin tail at a = n + q.
        sum += Float::with_val(prec, &a_pow * &a) / (l - 1);
        sum += Float::with_val(prec, &a_pow / 2u32);
        let mut r = Float::with_val(prec, &a_pow * &inv_a) * l; // (l)_1 a^{-l-1}
        let mut prev = f64::INFINITY;
        let mut i = 1usize;
        let mut converged = false;
        loop {
            if i > b.len() {
                b = scaled_bernoulli_floats(2 * b.len(), prec);
            }
            let term = Float::with_val(prec, &r * &b[i - 1]);
            let size = log2_abs(&term);
            if size < eps_log2 + log2_abs(&sum) {
                sum += term;
                converged = true;
                break;
            }
            if size > prev && i > 2 {
                break;
            }
            sum += term;
            prev = size;
            r *= (l as u64 + 2 * i as u64 - 1) * (l as u64 + 2 * i as u64);
            r *= &inv_a2;
            i += 1;
        }
        if !converged {
            let s = ApComplex::from_real(Float::with_val(prec, l));
            sum = hurwitz_zeta(&s, q, ctx)?.re;
        }
        out.push(sum);
    }
    Ok(out)
}
