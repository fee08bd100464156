//! Stieltjes constants γ_k(a), the Laurent coefficients of ζ(s, a) at s = 1:
//! ζ(s, a) = 1/(s-1) + Σ_k (-1)^k γ_k(a)/k! (s-1)^k.
//!
//! With f(x) = log(x+a)^k/(x+a) and a cutoff N,
//! γ_k(a) = Σ_{j<N} f(j) - log(N+a)^{k+1}/(k+1) + f(N)/2
//!          - Σ_i B_{2i}/(2i)! f^{(2i-1)}(N).
//! Derivatives are x^{-1-r} P_r(log x) with P_{r+1} = -(1+r) P_r + P_r'.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::bernoulli::scaled_bernoulli_floats;
use crate::error::{Error, Result};
use crate::precision::{log2_abs, PrecisionContext};

/// Largest index accepted by [`stieltjes`].
pub const DEFAULT_MAX_STIELTJES: u32 = 64;

type Key = (u32, Rational, u32);

fn memo() -> &'static Mutex<HashMap<Key, Float>> {
    static MEMO: OnceLock<Mutex<HashMap<Key, Float>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// γ_k = γ_k(1); γ_0 is Euler's constant.
pub fn stieltjes(k: u32, ctx: &PrecisionContext) -> Result<Float> {
    stieltjes_bounded(k, DEFAULT_MAX_STIELTJES, ctx)
}

pub fn stieltjes_bounded(k: u32, max_k: u32, ctx: &PrecisionContext) -> Result<Float> {
    if k > max_k {
        return Err(Error::InvalidArgument(format!("Stieltjes index {k} exceeds the limit {max_k}")));
    }
    generalized_stieltjes(k, &Rational::from(1), ctx)
}

/// γ_k(a) for rational a > 0.
pub fn generalized_stieltjes(k: u32, a: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if *a <= 0 {
        return Err(Error::Domain("Stieltjes shift must be positive".into()));
    }
    let key = (k, a.clone(), ctx.working_bits());
    if let Some(v) = memo().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(v.clone());
    }
    let mut n = ((0.7 * ctx.target_bits() as f64).ceil() as u64).max(2 * k as u64 + 16);
    for attempt in 0..=ctx.max_escalations() {
        let guard = ((k + 1) as f64 * ((n as f64) + 1.0).ln().log2().max(0.0)).ceil() as u32 + 64;
        let prec = ctx.working_bits() + guard;
        if let Some(v) = em_sum(k, a, n, prec) {
            let v = Float::with_val(ctx.working_bits(), &v);
            memo().lock().unwrap_or_else(|e| e.into_inner()).insert(key, v.clone());
            return Ok(v);
        }
        log::debug!("stieltjes({k}): doubling cutoff {n} (attempt {attempt})");
        n *= 2;
    }
    Err(Error::PrecisionExhausted { op: "stieltjes", attempts: ctx.max_escalations() })
}

fn eval_poly(coeffs: &[Integer], t: &Float) -> Float {
    let mut acc = Float::new(t.prec());
    for c in coeffs.iter().rev() {
        acc *= t;
        acc += c;
    }
    acc
}

fn em_sum(k: u32, a: &Rational, n: u64, prec: u32) -> Option<Float> {
    let af = Float::with_val(prec, a);
    let mut acc = Float::new(prec);
    for j in 0..n {
        let x = Float::with_val(prec, &af + j);
        let l = Float::with_val(prec, x.ln_ref());
        acc += l.pow(k) / x;
    }
    let y = Float::with_val(prec, &af + n);
    let t = Float::with_val(prec, y.ln_ref());
    acc -= Float::with_val(prec, (&t).pow(k + 1)) / (k + 1);
    acc += Float::with_val(prec, (&t).pow(k)) / &y / 2u32;

    let scale = log2_abs(&acc).max(0.0);
    let tol = scale - prec as f64;
    let inv_y = Float::with_val(prec, y.recip_ref());
    // P_0 = t^k
    let mut p = vec![Integer::new(); k as usize + 1];
    p[k as usize] = Integer::from(1);
    let mut r = 0u32;
    // y^{-1-r}
    let mut ypow = inv_y.clone();
    let mut prev = f64::INFINITY;
    let mut b = scaled_bernoulli_floats(32, prec);
    let mut i = 1usize;
    let step = |p: &mut Vec<Integer>, r: u32| {
        let mut q = vec![Integer::new(); p.len()];
        for d in 0..p.len() {
            q[d] = Integer::from(&p[d] * (r + 1)) * -1i32;
            if d + 1 < p.len() {
                q[d] += Integer::from(&p[d + 1] * (d as u32 + 1));
            }
        }
        *p = q;
    };
    loop {
        // advance to r = 2i - 1
        while r < 2 * i as u32 - 1 {
            step(&mut p, r);
            r += 1;
            ypow *= &inv_y;
        }
        if i > b.len() {
            b = scaled_bernoulli_floats(2 * b.len(), prec);
        }
        let d = eval_poly(&p, &t) * &ypow;
        let term = d * &b[i - 1];
        let size = log2_abs(&term);
        if size < tol {
            acc -= term;
            return Some(acc);
        }
        if size > prev && i > 2 {
            return None;
        }
        prev = size;
        acc -= term;
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    // g(s) = (s-1) ζ(s) = Σ_k (-1)^k γ_k/k! (s-1)^{k+1}; central differences
    // of g at s = 1 from MPFR's zeta give γ_1 = -g''(1)/2 and γ_2 = g'''(1)/3.
    fn fd_oracle() -> (f64, f64) {
        let p: u32 = 1200;
        let h: Float = Float::with_val(p, 1) >> 40u32;
        let g = |off: i32| -> Float {
            let x = Float::with_val(p, &h * off);
            let s = Float::with_val(p, &x + 1u32);
            if x.is_zero() {
                return Float::with_val(p, 1);
            }
            Float::with_val(p, s.zeta_ref()) * x
        };
        let (gm2, gm1, g0, g1, g2) = (g(-2), g(-1), g(0), g(1), g(2));
        let h2 = Float::with_val(p, h.square_ref());
        let d2 = (Float::with_val(p, &g1 + &gm1) - Float::with_val(p, &g0 * 2u32)) / &h2;
        let h3 = Float::with_val(p, &h2 * &h);
        let d3 = (Float::with_val(p, &g2 - &gm2) - Float::with_val(p, &g1 - &gm1) * 2u32) / h3 / 2u32;
        ((-d2 / 2u32).to_f64(), (d3 / 3u32).to_f64())
    }

    #[test]
    fn euler_constant() {
        let c = PrecisionContext::new(256);
        let g0 = stieltjes(0, &c).unwrap();
        let want = Float::with_val(400, Constant::Euler);
        assert!((g0 - want).abs() < 1e-75);
    }

    #[test]
    fn against_finite_difference_oracle() {
        let c = PrecisionContext::new(192);
        let (o1, o2) = fd_oracle();
        let g1 = stieltjes(1, &c).unwrap().to_f64();
        let g2 = stieltjes(2, &c).unwrap().to_f64();
        assert!((g1 - o1).abs() < 1e-15, "{g1} {o1}");
        assert!((g2 - o2).abs() < 1e-15, "{g2} {o2}");
        assert!((g1 + 0.0728158454836767).abs() < 1e-15);
        assert!((g2 + 0.00969036319287).abs() < 1e-14);
    }

    #[test]
    fn precision_consistency() {
        let a = stieltjes(5, &PrecisionContext::new(128)).unwrap();
        let b = stieltjes(5, &PrecisionContext::new(320)).unwrap();
        assert!((a - b).abs() < 1e-37);
    }

    #[test]
    fn shifted_constant_zero_is_minus_digamma() {
        // γ_0(a) = -ψ(a).
        let c = PrecisionContext::new(192);
        let a = generalized_stieltjes(0, &Rational::from((1, 2)), &c).unwrap();
        let want = -Float::with_val(300, 0.5).digamma();
        assert!((a - want).abs() < 1e-55);
        let a = generalized_stieltjes(0, &Rational::from((3, 4)), &c).unwrap();
        let want = -Float::with_val(300, 0.75).digamma();
        assert!((a - want).abs() < 1e-55);
    }

    #[test]
    fn limit_enforced() {
        let c = PrecisionContext::new(128);
        assert!(matches!(stieltjes(65, &c), Err(Error::InvalidArgument(_))));
        assert!(stieltjes_bounded(65, 100, &c).is_ok());
    }
}
