//! Minimal arbitrary-precision complex numbers over MPFR floats.

use std::fmt;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::precision::PrecisionContext;

pub type ApReal = Float;

#[derive(Clone, PartialEq)]
pub struct ApComplex {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for ApComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl ApComplex {
    pub fn new(re: Float, im: Float) -> Self {
        ApComplex { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        ApComplex { re, im }
    }

    pub fn with_val<R, I>(ctx: &PrecisionContext, re: R, im: I) -> Self
    where
        Float: Assign<R> + Assign<I>,
    {
        ApComplex { re: ctx.real(re), im: ctx.real(im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ApComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn neg(&self) -> Self {
        ApComplex { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        ApComplex {
            re: Float::with_val(p, &self.re + &other.re),
            im: Float::with_val(p, &self.im + &other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        ApComplex {
            re: Float::with_val(p, &self.re - &other.re),
            im: Float::with_val(p, &self.im - &other.im),
        }
    }

    pub fn add_real(&self, x: &Float) -> Self {
        let p = self.prec();
        ApComplex { re: Float::with_val(p, &self.re + x), im: self.im.clone() }
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        let p = self.prec();
        ApComplex { re: Float::with_val(p, &self.re * x), im: Float::with_val(p, &self.im * x) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec().max(other.prec());
        let ac = Float::with_val(p, &self.re * &other.re);
        let bd = Float::with_val(p, &self.im * &other.im);
        let ad = Float::with_val(p, &self.re * &other.im);
        let bc = Float::with_val(p, &self.im * &other.re);
        ApComplex { re: ac - bd, im: ad + bc }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        ApComplex { re: Float::with_val(self.prec(), &self.re / &d), im: -Float::with_val(self.prec(), &self.im / &d) }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// Principal logarithm, imaginary part in (-π, π].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        ApComplex { re: Float::with_val(p, self.abs().ln_ref()), im: self.arg() }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        ApComplex { re: Float::with_val(p, &r * &c), im: Float::with_val(p, &r * &s) }
    }

    /// base^self for a positive real base, `exp(self * ln base)`.
    pub fn exp_base(&self, ln_base: &Float) -> Self {
        self.mul_real(ln_base).exp()
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let sh = Float::with_val(p, self.im.sinh_ref());
        let ch = Float::with_val(p, self.im.cosh_ref());
        ApComplex { re: s * ch, im: c * sh }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let sh = Float::with_val(p, self.im.sinh_ref());
        let ch = Float::with_val(p, self.im.cosh_ref());
        ApComplex { re: c * ch, im: -(s * sh) }
    }

    /// self^k for a non-negative integer k, by repeated squaring.
    pub fn powu(&self, mut k: u32) -> Self {
        let p = self.prec();
        let mut acc = ApComplex::from_real(Float::with_val(p, 1));
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// e^{iθ}.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        ApComplex { re: c, im: s }
    }

    pub fn max_abs_component(&self) -> Float {
        let a = Float::with_val(self.prec(), self.re.abs_ref());
        let b = Float::with_val(self.prec(), self.im.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }
}

/// π at `prec` bits.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Euler's constant γ at `prec` bits.
pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// x^y for real x > 0 and real y.
pub fn powf(x: &Float, y: &Float) -> Float {
    Float::with_val(x.prec().max(y.prec()), x.pow(y))
}
