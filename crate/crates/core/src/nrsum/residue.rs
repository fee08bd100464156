//! Contour-integral form of alternating binomial sums:
//! Σ_{k=n0}^{n} (-1)^k C(n,k) f(k) = (-1)^n/(2πi) ∮ f(s) n!/(s(s-1)...(s-n)) ds
//! over a circle enclosing exactly {n0, ..., n}. Evaluated by the trapezoidal
//! rule, which converges geometrically for analytic periodic integrands.

use rug::float::Constant;
use rug::{Float, Integer};

use super::altsum::SequenceProvider;
use crate::complex::ApComplex;
use crate::error::{Error, Result};
use crate::precision::{log2_abs, PrecisionContext};

/// A function analytic near the contour, real on the real axis.
pub trait AnalyticKernel: Sync {
    fn eval(&self, s: &ApComplex, ctx: &PrecisionContext) -> ApComplex;

    /// Poles or branch points (re, im) the contour must avoid.
    fn singularities(&self) -> Vec<(f64, f64)> {
        Vec::new()
    }

    fn name(&self) -> String;
}

/// The kernel restricted to the integers.
pub struct KernelSequence<'a, K: AnalyticKernel + ?Sized>(pub &'a K);

impl<K: AnalyticKernel + ?Sized> SequenceProvider for KernelSequence<'_, K> {
    fn eval(&self, k: u64, ctx: &PrecisionContext) -> Result<Float> {
        let s = ApComplex::from_real(ctx.real(k));
        Ok(self.0.eval(&s, ctx).re)
    }
}

/// Quadrature outcome.
#[derive(Clone, Debug)]
pub struct ResidueCheck {
    pub value: ApComplex,
    pub center: f64,
    pub radius: f64,
    pub points: usize,
    /// |I_M - I_{M/2}| at the accepted M.
    pub last_change: f64,
}

pub const DEFAULT_QUAD_POINTS: usize = 64;
pub const MAX_QUAD_POINTS: usize = 1 << 17;

/// Real part of the contour integral. `contour_radius = None` picks the
/// default circle; `quad_points` is the starting point count.
pub fn nr_residue_check<K: AnalyticKernel + ?Sized>(
    f: &K,
    n: u64,
    n0: u64,
    contour_radius: Option<f64>,
    quad_points: usize,
    ctx: &PrecisionContext,
) -> Result<Float> {
    Ok(nr_residue_check_detailed(f, n, n0, contour_radius, quad_points, ctx)?.value.re)
}

/// Circle (center, radius) enclosing {n0..n} and avoiding other poles.
fn choose_contour<K: AnalyticKernel + ?Sized>(f: &K, n: u64, n0: u64, radius: Option<f64>) -> Result<(f64, f64)> {
    let (center, default_r, min_r, max_r) = if n0 == 0 {
        let c = n as f64 / 2.0;
        (c, 1.25 * (n as f64 + 1.0) / 2.0, c, f64::INFINITY)
    } else {
        // Must stay clear of the integrand's pole at n0 - 1.
        let c = (n0 + n) as f64 / 2.0;
        let half = (n - n0) as f64 / 2.0;
        (c, half + 0.5, half, half + 1.0)
    };
    let sing_dist = f
        .singularities()
        .iter()
        .map(|&(re, im)| ((re - center).powi(2) + im * im).sqrt())
        .fold(f64::INFINITY, f64::min);
    let upper = max_r.min(sing_dist);
    if upper <= min_r {
        return Err(Error::InvalidArgument(format!(
            "no circle about {center} encloses {n0}..={n} while excluding the kernel's singularities"
        )));
    }
    let r = match radius {
        Some(r) => {
            if !(r > min_r && r < upper) {
                return Err(Error::InvalidArgument(format!("contour radius {r} outside ({min_r}, {upper})")));
            }
            r
        }
        None if default_r < upper => default_r,
        None => 0.5 * (min_r + upper),
    };
    Ok((center, r))
}

pub fn nr_residue_check_detailed<K: AnalyticKernel + ?Sized>(
    f: &K,
    n: u64,
    n0: u64,
    contour_radius: Option<f64>,
    quad_points: usize,
    ctx: &PrecisionContext,
) -> Result<ResidueCheck> {
    if n0 > n {
        return Err(Error::InvalidArgument("n0 must not exceed n".into()));
    }
    let (center, radius) = choose_contour(f, n, n0, contour_radius)?;
    // The integrand can exceed the result by up to ~2^n.
    let c = ctx.for_cancellation(n as u32 + 32);
    let p = c.working_bits();
    let nfact = Float::with_val(p, &Integer::from(Integer::factorial(n as u32)));
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let cen = Float::with_val(p, center);
    let rad = Float::with_val(p, radius);

    let sample = |j: usize, m: usize| -> ApComplex {
        let theta = Float::with_val(p, &two_pi * j as u64) / m as u64;
        let e = ApComplex::cis(&theta);
        let s = e.mul_real(&rad).add_real(&cen);
        let mut den = s.clone();
        for i in 1..=n {
            den = den.mul(&s.add_real(&Float::with_val(p, -(i as i64))));
        }
        // g(s) ds/dθ / (2πi) = f(s) n!/Π (s - i) · R e^{iθ} / (2π)
        f.eval(&s, &c).mul(&e).mul_real(&rad).mul_real(&nfact).div(&den)
    };

    let tol_bits = ctx.target_bits() as f64;
    let mut m = quad_points.max(8);
    let mut sum = ApComplex::from_real(Float::new(p));
    for j in 0..m {
        sum = sum.add(&sample(j, m));
    }
    let sign = if n % 2 == 0 { 1i32 } else { -1 };
    let mut prev = sum.mul_real(&Float::with_val(p, sign)).mul_real(&Float::with_val(p, m as u64).recip());
    loop {
        let m2 = 2 * m;
        if m2 > MAX_QUAD_POINTS {
            return Err(Error::QuadratureNonConvergence { points: m, last_change: f64::NAN });
        }
        // Odd-indexed points of the refined rule.
        for j in (1..m2).step_by(2) {
            sum = sum.add(&sample(j, m2));
        }
        let cur = sum.mul_real(&Float::with_val(p, sign)).mul_real(&Float::with_val(p, m2 as u64).recip());
        let change = cur.sub(&prev).abs();
        let scale = log2_abs(&cur.abs()).max(0.0);
        if log2_abs(&change) < scale - tol_bits - 8.0 {
            return Ok(ResidueCheck {
                value: ApComplex::new(ctx.round(&cur.re), ctx.round(&cur.im)),
                center,
                radius,
                points: m2,
                last_change: change.to_f64(),
            });
        }
        if m2 >= MAX_QUAD_POINTS {
            return Err(Error::QuadratureNonConvergence { points: m2, last_change: change.to_f64() });
        }
        prev = cur;
        m = m2;
    }
}

/// Test kernels with simple analytic structure.
pub mod kernels {
    use super::*;

    /// c (constant).
    pub struct Constant(pub f64);

    /// b^s for real b > 0.
    pub struct Power(pub f64);

    /// e^{-s}.
    pub struct ExpNeg;

    /// Polynomial with the given coefficients, lowest degree first.
    pub struct Polynomial(pub Vec<i64>);

    /// cos(s).
    pub struct Cosine;

    /// sin(s/2)·e^{s/4}.
    pub struct SinExp;

    /// 1/(s + a), a > 0.
    pub struct Reciprocal(pub f64);

    /// 1/((s + a)(s + b)).
    pub struct ReciprocalPair(pub f64, pub f64);

    impl AnalyticKernel for Constant {
        fn eval(&self, _s: &ApComplex, ctx: &PrecisionContext) -> ApComplex {
            ApComplex::from_real(ctx.real(self.0))
        }
        fn name(&self) -> String {
            format!("{}", self.0)
        }
    }

    impl AnalyticKernel for Power {
        fn eval(&self, s: &ApComplex, ctx: &PrecisionContext) -> ApComplex {
            s.exp_base(&ctx.real(self.0).ln())
        }
        fn name(&self) -> String {
            format!("{}^s", self.0)
        }
    }

    impl AnalyticKernel for ExpNeg {
        fn eval(&self, s: &ApComplex, _ctx: &PrecisionContext) -> ApComplex {
            s.neg().exp()
        }
        fn name(&self) -> String {
            "e^-s".into()
        }
    }

    impl AnalyticKernel for Polynomial {
        fn eval(&self, s: &ApComplex, ctx: &PrecisionContext) -> ApComplex {
            let mut acc = ApComplex::from_real(ctx.zero());
            for &a in self.0.iter().rev() {
                acc = acc.mul(s).add_real(&ctx.real(a));
            }
            acc
        }
        fn name(&self) -> String {
            format!("poly{:?}", self.0)
        }
    }

    impl AnalyticKernel for Cosine {
        fn eval(&self, s: &ApComplex, _ctx: &PrecisionContext) -> ApComplex {
            s.cos()
        }
        fn name(&self) -> String {
            "cos s".into()
        }
    }

    impl AnalyticKernel for SinExp {
        fn eval(&self, s: &ApComplex, ctx: &PrecisionContext) -> ApComplex {
            let half = ctx.real(0.5);
            let quarter = ctx.real(0.25);
            s.mul_real(&half).sin().mul(&s.mul_real(&quarter).exp())
        }
        fn name(&self) -> String {
            "sin(s/2) e^(s/4)".into()
        }
    }

    impl AnalyticKernel for Reciprocal {
        fn eval(&self, s: &ApComplex, ctx: &PrecisionContext) -> ApComplex {
            s.add_real(&ctx.real(self.0)).recip()
        }
        fn singularities(&self) -> Vec<(f64, f64)> {
            vec![(-self.0, 0.0)]
        }
        fn name(&self) -> String {
            format!("1/(s+{})", self.0)
        }
    }

    impl AnalyticKernel for ReciprocalPair {
        fn eval(&self, s: &ApComplex, ctx: &PrecisionContext) -> ApComplex {
            s.add_real(&ctx.real(self.0)).mul(&s.add_real(&ctx.real(self.1))).recip()
        }
        fn singularities(&self) -> Vec<(f64, f64)> {
            vec![(-self.0, 0.0), (-self.1, 0.0)]
        }
        fn name(&self) -> String {
            format!("1/((s+{})(s+{}))", self.0, self.1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::kernels::*;
    use super::*;
    use crate::nrsum::altsum::alt_binomial_sum;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128)
    }

    fn gap<K: AnalyticKernel>(k: &K, n: u64, n0: u64) -> Float {
        let c = ctx();
        let a = nr_residue_check(k, n, n0, None, DEFAULT_QUAD_POINTS, &c).unwrap();
        let b = alt_binomial_sum(&KernelSequence(k), n, n0, &c).unwrap();
        (a - b).abs()
    }

    #[test]
    fn constant_kernel() {
        let v = nr_residue_check(&Constant(1.0), 3, 0, None, 64, &ctx()).unwrap();
        assert!(v.abs() < 1e-36);
    }

    #[test]
    fn power_of_two() {
        let v = nr_residue_check(&Power(2.0), 4, 0, None, 64, &ctx()).unwrap();
        assert!((v - 1u32).abs() < 1e-36);
    }

    #[test]
    fn reciprocal_matches_sum() {
        assert!(gap(&Reciprocal(2.0), 5, 0) < 1e-36);
        assert!(gap(&Reciprocal(2.0), 20, 0) < 1e-36);
    }

    #[test]
    fn shifted_start() {
        assert!(gap(&Power(1.0 / 3.0), 12, 3) < 1e-36);
        assert!(gap(&Cosine, 9, 2) < 1e-36);
    }

    #[test]
    fn rejects_enclosed_singularity() {
        // a pole at 1.5 sits among the enclosed integers
        let c = ctx();
        assert!(nr_residue_check(&Reciprocal(-1.5), 4, 0, None, 64, &c).is_err());
        assert!(nr_residue_check(&Constant(1.0), 4, 0, Some(1.0), 64, &c).is_err());
    }
}
