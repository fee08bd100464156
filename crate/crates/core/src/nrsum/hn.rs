//! The sums H_n(m, k) = Σ_{l=2}^{n} (-1)^l C(n,l) ζ(l, m/k)/k^l.

use rayon::prelude::*;
use rug::{Float, Rational};

use super::altsum::{alt_binomial_sum_detailed, AltSum, CachedSequence, SequenceProvider};
use super::saddle::{an_envelope, an_error_bound, an_saddle, cos_phase, SaddleVariant};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::specfun::harmonic::harmonic_exact;
use crate::specfun::{digamma, hurwitz_integer_values, hurwitz_zeta_real};

/// Smallest admissible m/k.
pub const MIN_SHIFT_LOG2: i32 = -16;

/// f(l) = ζ(l, m/k)/k^l.
pub struct HurwitzTerms {
    q: Rational,
    k: Rational,
}

impl HurwitzTerms {
    pub fn new(m: &Rational, k: &Rational) -> Result<Self> {
        let q = shift(m, k)?;
        Ok(HurwitzTerms { q, k: k.clone() })
    }
}

impl SequenceProvider for HurwitzTerms {
    fn eval(&self, l: u64, ctx: &PrecisionContext) -> Result<Float> {
        let p = ctx.working_bits();
        let z = hurwitz_zeta_real(&ctx.real(l), &Float::with_val(p, &self.q), ctx)?;
        let kl = Float::with_val(p, &self.k).pow_u(l as u32);
        Ok(z / kl)
    }

    fn eval_range(&self, lo: u64, hi: u64, ctx: &PrecisionContext) -> Result<Vec<Float>> {
        if lo < 2 {
            return (lo..=hi).map(|l| self.eval(l, ctx)).collect();
        }
        let p = ctx.working_bits();
        let hi32 = u32::try_from(hi).map_err(|_| Error::InvalidArgument("index too large".into()))?;
        let zs = hurwitz_integer_values(&Float::with_val(p, &self.q), hi32, ctx)?;
        let inv_k = Float::with_val(p, &self.k).recip();
        let mut scale = Float::with_val(p, &inv_k * &inv_k);
        let mut out = Vec::with_capacity((hi + 1 - lo) as usize);
        for (i, z) in zs.into_iter().enumerate() {
            let l = i as u64 + 2;
            if l >= lo {
                out.push(z * &scale);
            }
            scale *= &inv_k;
        }
        Ok(out)
    }
}

trait PowU {
    fn pow_u(self, e: u32) -> Float;
}

impl PowU for Float {
    fn pow_u(self, e: u32) -> Float {
        use rug::ops::Pow;
        self.pow(e)
    }
}

fn shift(m: &Rational, k: &Rational) -> Result<Rational> {
    if *m <= 0 || *k <= 0 {
        return Err(Error::InvalidArgument("H_n needs m > 0 and k > 0".into()));
    }
    let q = Rational::from(m / k);
    if q < Rational::from((1, 1u32 << (-MIN_SHIFT_LOG2))) {
        return Err(Error::InvalidArgument(format!("m/k = {q} is below 2^{MIN_SHIFT_LOG2}")));
    }
    Ok(q)
}

/// H_n(m, k) by direct summation; H_1 = 0.
pub fn hn_direct(n: u64, m: &Rational, k: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    Ok(hn_direct_detailed(n, m, k, ctx)?.value)
}

pub fn hn_direct_detailed(n: u64, m: &Rational, k: &Rational, ctx: &PrecisionContext) -> Result<AltSum> {
    let f = HurwitzTerms::new(m, k)?;
    if n == 0 {
        return Err(Error::InvalidArgument("H_n needs n >= 1".into()));
    }
    alt_binomial_sum_detailed(&f, n, 2, ctx)
}

/// (m/k - 1/2) - (n/k)(ψ(m/k) + log k + 1 - h_{n-1}); zero for n = 1.
pub fn hn_main_terms(n: u64, m: &Rational, k: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let q = shift(m, k)?;
    if n == 0 {
        return Err(Error::InvalidArgument("H_n needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(ctx.zero());
    }
    let p = ctx.working_bits();
    let qf = Float::with_val(p, &q);
    let kf = Float::with_val(p, k);
    let psi = digamma(&qf, ctx)?;
    let h = Float::with_val(p, &harmonic_exact(n - 1));
    let inner = psi + kf.clone().ln() + 1u32 - h;
    Ok(qf - 0.5f64 - inner * n / kf)
}

/// Σ_{i=1}^{j} (1 - 1/((q - i) k))^n with j = ⌈q⌉ - 1: the amount by which
/// the residual at q differs from the residual at q - j ∈ (0, 1].
pub fn shift_correction(n: u64, m: &Rational, k: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let q = shift(m, k)?;
    let p = ctx.working_bits();
    let mut acc = Float::new(p);
    let mut qi = q.clone();
    while qi > 1 {
        qi -= 1u32;
        let x = Rational::from(1) - Rational::from(Rational::from(&qi * k).recip_ref());
        acc += Float::with_val(p, &x).pow_u(n as u32);
    }
    Ok(acc)
}

/// Main terms + a_n (re-derived form) - shift corrections.
pub fn hn_closed_form(n: u64, m: &Rational, k: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if n == 1 {
        shift(m, k)?;
        return Ok(ctx.zero());
    }
    let main = hn_main_terms(n, m, k, ctx)?;
    let a = an_saddle(n, m, k, SaddleVariant::Rederived, ctx)?;
    let corr = shift_correction(n, m, k, ctx)?;
    Ok(main + a - corr)
}

/// Decomposition of H_n(m, k) into main terms and the oscillating residual.
#[derive(Clone, Debug)]
pub struct HnBreakdown {
    pub n: u64,
    pub m: Rational,
    pub k: Rational,
    pub direct_value: Float,
    pub direct_error_bound: Float,
    pub main_terms: Float,
    /// Leading saddle-point form.
    pub an_predicted: Float,
    /// Sum over l = 1..k (integer k only).
    pub an_lsum: Option<Float>,
    pub an_rederived: Float,
    /// direct_value - main_terms.
    pub residual: Float,
    pub an_error_bound: Float,
    /// cos of the leading phase.
    pub cos_phase: Float,
    /// (1/k)(2n/(πk))^{1/4} e^{-√(4πn/k)}.
    pub envelope: Float,
    pub working_bits: u32,
}

impl HnBreakdown {
    /// residual / an_predicted.
    pub fn ratio(&self) -> Float {
        Float::with_val(53, &self.residual / &self.an_predicted)
    }

    pub fn ratio_rederived(&self) -> Float {
        Float::with_val(53, &self.residual / &self.an_rederived)
    }
}

pub fn hn_breakdown(n: u64, m: &Rational, k: &Rational, ctx: &PrecisionContext) -> Result<HnBreakdown> {
    let f = HurwitzTerms::new(m, k)?;
    breakdown_with(&f, n, m, k, ctx)
}

fn breakdown_with<S: SequenceProvider + ?Sized>(
    f: &S,
    n: u64,
    m: &Rational,
    k: &Rational,
    ctx: &PrecisionContext,
) -> Result<HnBreakdown> {
    if n == 0 {
        return Err(Error::InvalidArgument("H_n needs n >= 1".into()));
    }
    let direct = alt_binomial_sum_detailed(f, n, 2, ctx)?;
    // Main terms at the same precision as the sum, so the residual is exact.
    let c = ctx.for_cancellation(n as u32 + 2);
    let w = direct.working_bits.max(c.working_bits());
    let c = PrecisionContext::with_working_bits(w);
    let main = hn_main_terms(n, m, k, &c)?;
    let residual = Float::with_val(w, &direct.value - &main);
    let zero = || Float::new(w);
    let (an, lsum, red) = if n == 1 {
        (zero(), k.denom().eq(&1).then(zero), zero())
    } else {
        let lsum = if k.denom().eq(&1) { Some(an_saddle(n, m, k, SaddleVariant::LSum, ctx)?) } else { None };
        (
            an_saddle(n, m, k, SaddleVariant::Leading, ctx)?,
            lsum,
            an_saddle(n, m, k, SaddleVariant::Rederived, ctx)?,
        )
    };
    Ok(HnBreakdown {
        n,
        m: m.clone(),
        k: k.clone(),
        direct_value: direct.value,
        direct_error_bound: direct.error_bound,
        main_terms: main,
        an_predicted: an,
        an_lsum: lsum,
        an_rederived: red,
        residual,
        an_error_bound: an_error_bound(n, k, ctx),
        cos_phase: cos_phase(n, m, k, ctx),
        envelope: an_envelope(n, k, ctx),
        working_bits: w,
    })
}

/// Many H_n for one (m, k): the ζ values are computed once at the precision
/// the largest n needs and rounded for smaller n.
pub struct HnSweep {
    m: Rational,
    k: Rational,
    cache: CachedSequence,
    nmax: u64,
}

impl HnSweep {
    pub fn new(m: &Rational, k: &Rational, nmax: u64, ctx: &PrecisionContext) -> Result<Self> {
        let f = HurwitzTerms::new(m, k)?;
        let c = ctx.for_cancellation(nmax as u32 + 2);
        let values = if nmax >= 2 { f.eval_range(2, nmax, &c)? } else { Vec::new() };
        Ok(HnSweep { m: m.clone(), k: k.clone(), cache: CachedSequence::new(2, c.target_bits(), values), nmax })
    }

    pub fn breakdown(&self, n: u64, ctx: &PrecisionContext) -> Result<HnBreakdown> {
        if n > self.nmax {
            return Err(Error::InvalidArgument(format!("n = {n} beyond sweep maximum {}", self.nmax)));
        }
        breakdown_with(&self.cache, n, &self.m, &self.k, ctx)
    }

    /// Breakdowns for each n, evaluated in parallel, in input order.
    pub fn breakdowns(&self, ns: &[u64], ctx: &PrecisionContext) -> Result<Vec<HnBreakdown>> {
        ns.par_iter().map(|&n| self.breakdown(n, ctx)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn r(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(192)
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs().to_f64() < tol
    }

    #[test]
    fn direct_small_n() {
        let c = ctx();
        let one = r(1, 1);
        assert!(hn_direct(1, &one, &one, &c).unwrap().is_zero());
        let z2 = Float::with_val(256, 2).zeta();
        let z3 = Float::with_val(256, 3).zeta();
        assert!(close(&hn_direct(2, &one, &one, &c).unwrap(), &z2, 1e-55));
        let want = Float::with_val(256, &z2 * 3u32) - &z3;
        let v = hn_direct(3, &one, &one, &c).unwrap();
        assert!(close(&v, &want, 1e-55));
        assert!((v.to_f64() - 3.7327452973).abs() < 1e-9);
    }

    #[test]
    fn main_terms_small_n() {
        let c = ctx();
        let one = r(1, 1);
        let g = Float::with_val(256, Constant::Euler);
        let want2 = Float::with_val(256, &g * 2u32) + 0.5f64;
        assert!(close(&hn_main_terms(2, &one, &one, &c).unwrap(), &want2, 1e-55));
        let want3 = Float::with_val(256, &g * 3u32) + 2u32;
        let v3 = hn_main_terms(3, &one, &one, &c).unwrap();
        assert!(close(&v3, &want3, 1e-55));
        assert!((v3.to_f64() - 3.731647).abs() < 1e-6);
        let res = hn_main_terms(2, &one, &one, &c).unwrap() - hn_direct(2, &one, &one, &c).unwrap();
        assert!(res.abs() < 0.01);
    }

    #[test]
    fn zeta_parameters_at_two() {
        // H_2(1, 2) = ζ(2, 1/2)/4 = π²/8.
        let c = ctx();
        let v = hn_direct(2, &r(1, 1), &r(2, 1), &c).unwrap();
        let pi = Float::with_val(256, Constant::Pi);
        let want = Float::with_val(256, pi.square_ref()) / 8u32;
        assert!(close(&v, &want, 1e-55));
    }

    #[test]
    fn residual_oracle_at_100() {
        // At n = 100 the phase sits at cos = -0.48 and the leading form is
        // 30% low; the ratio approaches 1 only at larger n with |cos| near 1.
        let c = PrecisionContext::new(448);
        let b = hn_breakdown(100, &r(1, 1), &r(1, 1), &c).unwrap();
        let ratio = b.ratio().to_f64();
        assert!((ratio - 1.30348).abs() < 1e-4, "ratio {ratio}");
        assert!(b.residual.clone().abs() <= Float::with_val(64, &b.envelope * 3u32));
        let b = hn_breakdown(512, &r(1, 1), &r(1, 1), &c).unwrap();
        assert!((b.ratio().to_f64() - 1.0).abs() < 0.15);
    }

    #[test]
    fn shift_identity() {
        // residual(q) = residual(q - 1) - (1 - 1/((q-1)k))^n
        let c = PrecisionContext::new(256);
        let n = 40;
        let a = hn_breakdown(n, &r(5, 1), &r(2, 1), &c).unwrap();
        let b = hn_breakdown(n, &r(3, 1), &r(2, 1), &c).unwrap();
        let x = Float::with_val(512, 1) - Float::with_val(512, 1) / 3u32;
        let want = Float::with_val(512, &b.residual) - x.pow_u(n as u32);
        assert!(close(&a.residual, &want, 1e-60));
        // and (3,2) coincides with (1,2).
        let d = hn_breakdown(n, &r(1, 1), &r(2, 1), &c).unwrap();
        assert!(close(&b.residual, &d.residual, 1e-60));
    }

    #[test]
    fn closed_form_tracks_direct() {
        let c = PrecisionContext::new(320);
        for (m, k) in [(1, 1), (1, 2), (3, 2), (3, 1)] {
            let n = 300;
            let d = hn_direct(n, &r(m, 1), &r(k, 1), &c).unwrap();
            let cf = hn_closed_form(n, &r(m, 1), &r(k, 1), &c).unwrap();
            let env = an_envelope(n, &r(k, 1), &c);
            let gap = Float::with_val(64, &d - &cf).abs();
            assert!(gap < env, "(m, k) = ({m}, {k}): gap {gap} env {env}");
        }
    }

    #[test]
    fn sweep_matches_single_evaluation() {
        let c = PrecisionContext::new(192);
        let sweep = HnSweep::new(&r(1, 1), &r(2, 1), 120, &c).unwrap();
        let bs = sweep.breakdowns(&[2, 50, 120], &c).unwrap();
        for b in bs {
            let single = hn_direct(b.n, &r(1, 1), &r(2, 1), &c).unwrap();
            assert!(close(&b.direct_value, &single, 1e-50));
        }
    }

    #[test]
    fn rejects_tiny_shift() {
        let c = ctx();
        assert!(hn_direct(5, &r(1, 1), &r(1 << 20, 1), &c).is_err());
        assert!(hn_main_terms(5, &r(0, 1), &r(1, 1), &c).is_err());
    }

    #[test]
    fn n_one_is_zero_everywhere() {
        let c = ctx();
        let b = hn_breakdown(1, &r(1, 1), &r(1, 1), &c).unwrap();
        assert!(b.direct_value.is_zero() && b.main_terms.is_zero() && b.residual.is_zero());
    }
}
