//! Exponentially small corrections a_n(m, k) to H_n(m, k).

use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Which closed form of the oscillating correction to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaddleVariant {
    /// (1/k)(2n/(πk))^{1/4} e^{-√(4πn/k)} cos(√(4πn/k) - 5π/8 - 2πm/k).
    Leading,
    /// (1/k)(2n/π)^{1/4} Σ_{l=1}^{k} (l/k)^{1/4} e^{-√(4πln/k)} cos(√(4πln/k) - 5π/8 - 2πlm/k),
    /// integer k only.
    LSum,
    /// (2n/(πk))^{1/4} e^{-√(4πn/k)} cos(√(4πn/k) + 3π/8 + π/k - 2πm/k).
    /// Same as `Leading` for k = 1; tracks the residual for k > 1.
    Rederived,
}

fn pi(p: u32) -> Float {
    Float::with_val(p, Constant::Pi)
}

/// x = √(4πn/k).
fn saddle_x(n: u64, k: &Rational, p: u32) -> Float {
    let v = pi(p) * 4u32 * n / Float::with_val(p, k);
    v.sqrt()
}

/// (1/k)(2n/(πk))^{1/4} e^{-√(4πn/k)}, the amplitude scale.
pub fn an_envelope(n: u64, k: &Rational, ctx: &PrecisionContext) -> Float {
    let p = ctx.working_bits();
    let kf = Float::with_val(p, k);
    let base = Float::with_val(p, 2 * n) / (pi(p) * &kf);
    let x = saddle_x(n, k, p);
    base.sqrt().sqrt() * (-x).exp() / kf
}

/// The phase √(4πn/k) - 5π/8 - 2πm/k of the leading form.
pub fn leading_phase(n: u64, m: &Rational, k: &Rational, ctx: &PrecisionContext) -> Float {
    let p = ctx.working_bits();
    let q = Float::with_val(p, m) / Float::with_val(p, k);
    saddle_x(n, k, p) - pi(p) * 5u32 / 8u32 - pi(p) * 2u32 * q
}

/// cos of [`leading_phase`].
pub fn cos_phase(n: u64, m: &Rational, k: &Rational, ctx: &PrecisionContext) -> Float {
    leading_phase(n, m, k, ctx).cos()
}

/// a_n(m, k) in the requested form.
pub fn an_saddle(
    n: u64,
    m: &Rational,
    k: &Rational,
    variant: SaddleVariant,
    ctx: &PrecisionContext,
) -> Result<Float> {
    if *m <= 0 || *k <= 0 {
        return Err(Error::InvalidArgument("a_n needs m > 0 and k > 0".into()));
    }
    let p = ctx.working_bits();
    match variant {
        SaddleVariant::Leading => Ok(an_envelope(n, k, ctx) * cos_phase(n, m, k, ctx)),
        SaddleVariant::LSum => {
            if !k.denom().eq(&1) {
                return Err(Error::InvalidArgument("the l-sum form needs an integer k".into()));
            }
            let kk = k.numer().to_u64().ok_or_else(|| Error::InvalidArgument("k too large".into()))?;
            let kf = Float::with_val(p, k);
            let q = Float::with_val(p, m) / &kf;
            let pre = (Float::with_val(p, 2 * n) / pi(p)).sqrt().sqrt() / &kf;
            let mut acc = Float::new(p);
            for l in 1..=kk {
                let w = (Float::with_val(p, l) / &kf).sqrt().sqrt();
                let x = (pi(p) * 4u32 * l * n / &kf).sqrt();
                let phase = Float::with_val(p, &x) - pi(p) * 5u32 / 8u32 - pi(p) * 2u32 * l * &q;
                acc += w * (-x).exp() * phase.cos();
            }
            Ok(pre * acc)
        }
        SaddleVariant::Rederived => {
            let kf = Float::with_val(p, k);
            let q = Float::with_val(p, m) / &kf;
            let x = saddle_x(n, k, p);
            let amp = (Float::with_val(p, 2 * n) / (pi(p) * &kf)).sqrt().sqrt() * (-Float::with_val(p, &x)).exp();
            let phase = x + pi(p) * 3u32 / 8u32 + pi(p) / &kf - pi(p) * 2u32 * q;
            Ok(amp * phase.cos())
        }
    }
}

/// Bound n^{-1/4} e^{-√(4πn/k)} on the error of the leading form (unit constant).
pub fn an_error_bound(n: u64, k: &Rational, ctx: &PrecisionContext) -> Float {
    let p = ctx.working_bits();
    let x = saddle_x(n, k, p);
    Float::with_val(p, n).sqrt().sqrt().recip() * (-x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn decays_to_zero() {
        let c = PrecisionContext::new(128);
        let a = an_saddle(10_000, &r(1, 1), &r(1, 1), SaddleVariant::Leading, &c).unwrap();
        assert!(a.abs() < 1e-150);
    }

    #[test]
    fn variants_coincide_at_k_one() {
        let c = PrecisionContext::new(128);
        for n in [5u64, 37, 300] {
            let a = an_saddle(n, &r(1, 1), &r(1, 1), SaddleVariant::Leading, &c).unwrap();
            let b = an_saddle(n, &r(1, 1), &r(1, 1), SaddleVariant::LSum, &c).unwrap();
            let d = an_saddle(n, &r(1, 1), &r(1, 1), SaddleVariant::Rederived, &c).unwrap();
            let scale = an_envelope(n, &r(1, 1), &c);
            assert!(Float::with_val(128, &a - &b).abs() < Float::with_val(128, &scale * 1e-30));
            assert!(Float::with_val(128, &a - &d).abs() < Float::with_val(128, &scale * 1e-30));
        }
    }

    #[test]
    fn periodic_in_m_mod_k() {
        let c = PrecisionContext::new(128);
        let a = an_saddle(200, &r(1, 1), &r(2, 1), SaddleVariant::Rederived, &c).unwrap();
        let b = an_saddle(200, &r(3, 1), &r(2, 1), SaddleVariant::Rederived, &c).unwrap();
        assert!(Float::with_val(128, &a - &b).abs() < Float::with_val(128, a.abs_ref()) * 1e-30);
    }

    #[test]
    fn sign_changes_at_cosine_zeros() {
        // a_n(1,1) changes sign exactly between consecutive n whose phases
        // straddle π/2 + jπ.
        let c = PrecisionContext::new(128);
        let one = r(1, 1);
        let mut prev: Option<(f64, f64)> = None;
        for n in 2..400u64 {
            let a = an_saddle(n, &one, &one, SaddleVariant::Leading, &c).unwrap().to_f64();
            let ph = leading_phase(n, &one, &one, &c).to_f64();
            if let Some((pa, pph)) = prev {
                let crossings = ((ph / std::f64::consts::PI - 0.5).floor() - (pph / std::f64::consts::PI - 0.5).floor()) as i64;
                assert_eq!(a.signum() != pa.signum(), crossings % 2 == 1, "n = {n}");
            }
            prev = Some((a, ph));
        }
    }

    #[test]
    fn lsum_rejects_fractional_k() {
        let c = PrecisionContext::new(64);
        assert!(an_saddle(10, &r(1, 1), &r(3, 2), SaddleVariant::LSum, &c).is_err());
    }
}
