//! Functional-equation data of an L-function F in the Selberg class:
//! Φ(s) = Q^s Π_j Γ(λ_j s + μ_j) F(s) = ω conj(Φ(1 - conj s)).

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::complex::ApComplex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::specfun::PrimeSieve;

/// One factor Γ(λ s + μ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub lambda: Rational,
    pub mu: Rational,
}

impl GammaFactor {
    pub fn new(lambda: Rational, mu: Rational) -> Self {
        GammaFactor { lambda, mu }
    }
}

/// Q = √radicand · π^pi_power, with both parts exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleFactor {
    pub radicand: Rational,
    pub pi_power: Rational,
}

impl ScaleFactor {
    pub fn value(&self, ctx: &PrecisionContext) -> Float {
        self.ln(ctx).exp()
    }

    /// log Q = (1/2) log radicand + pi_power · log π.
    pub fn ln(&self, ctx: &PrecisionContext) -> Float {
        let p = ctx.working_bits();
        let r = Float::with_val(p, &self.radicand).ln() / 2u32;
        let lp = Float::with_val(p, Constant::Pi).ln() * Float::with_val(p, &self.pi_power);
        r + lp
    }
}

/// Source of the coefficients Λ_F(n) of -F'/F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithmeticData {
    /// Λ(n).
    VonMangoldt,
    /// χ(n) Λ(n); `values[n mod modulus]` gives χ(n) ∈ {-1, 0, 1}.
    DirichletCharacter { modulus: u64, values: Vec<i64> },
    /// No coefficients (toy or unsupported descriptors).
    Unavailable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelbergDescriptor {
    pub name: String,
    /// Order of the pole at s = 1.
    pub m_f: u32,
    pub q: ScaleFactor,
    pub gamma_factors: Vec<GammaFactor>,
    /// Root number as decimal strings (re, im); stored, never used numerically.
    pub omega: (String, String),
    pub arithmetic: ArithmeticData,
}

impl SelbergDescriptor {
    /// Checks positivity of λ_j and Q, μ_j >= 0, |ω| = 1 and the character table.
    pub fn validate(&self, ctx: &PrecisionContext) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDescriptor(format!("{}: {m}", self.name)));
        if self.gamma_factors.is_empty() {
            return bad("at least one gamma factor is required".into());
        }
        for (j, g) in self.gamma_factors.iter().enumerate() {
            if g.lambda <= 0 {
                return bad(format!("λ_{} = {} must be positive", j + 1, g.lambda));
            }
            if g.mu < 0 {
                return bad(format!("μ_{} = {} must be non-negative", j + 1, g.mu));
            }
        }
        if self.q.radicand <= 0 {
            return bad("Q radicand must be positive".into());
        }
        let omega = self.omega_value(ctx)?;
        let dev = Float::with_val(64, omega.abs() - 1u32).abs();
        let digits = self.omega.0.len().min(self.omega.1.len()).max(1) as i32;
        let tol = Float::with_val(64, 2f64.powi(-(ctx.target_bits() as i32))).max(&Float::with_val(64, 10f64.powi(-(digits - 1).max(1))));
        if self.omega.0.trim() != "1" && dev > tol {
            return bad(format!("|ω| = 1 violated by {}", dev.to_f64()));
        }
        if let ArithmeticData::DirichletCharacter { modulus, values } = &self.arithmetic {
            if *modulus < 1 || values.len() as u64 != *modulus {
                return bad("character table length must equal the modulus".into());
            }
            if values.iter().any(|v| !(-1..=1).contains(v)) {
                return bad("character values must be -1, 0 or 1".into());
            }
            if values[0] != 0 && *modulus > 1 {
                return bad("χ(0) must vanish".into());
            }
        }
        Ok(())
    }

    pub fn omega_value(&self, ctx: &PrecisionContext) -> Result<ApComplex> {
        let parse = |s: &str| {
            Float::parse(s.trim())
                .map(|v| ctx.real(v))
                .map_err(|e| Error::InvalidDescriptor(format!("{}: bad ω component {s:?}: {e}", self.name)))
        };
        Ok(ApComplex::new(parse(&self.omega.0)?, parse(&self.omega.1)?))
    }

    /// d_F = 2 Σ λ_j, exactly.
    pub fn degree(&self) -> Rational {
        let mut s = Rational::new();
        for g in &self.gamma_factors {
            s += &g.lambda;
        }
        s * 2u32
    }

    /// λ = Π λ_j^{2λ_j}.
    pub fn lambda_invariant(&self, ctx: &PrecisionContext) -> Float {
        let p = ctx.working_bits();
        let mut acc = Float::with_val(p, 1);
        for g in &self.gamma_factors {
            let base = Float::with_val(p, &g.lambda);
            let e = Float::with_val(p, &g.lambda) * 2u32;
            acc *= base.pow(e);
        }
        acc
    }

    pub fn q_value(&self, ctx: &PrecisionContext) -> Float {
        self.q.value(ctx)
    }

    /// c_F = (d_F/2)(γ - 1) + (1/2) log(λ Q²).
    pub fn c_constant(&self, ctx: &PrecisionContext) -> Float {
        let p = ctx.working_bits();
        let half_d = Float::with_val(p, &self.degree()) / 2u32;
        let g = Float::with_val(p, Constant::Euler);
        let ln_lam = self.lambda_invariant(ctx).ln();
        half_d * (g - 1u32) + ln_lam / 2u32 + self.q.ln(ctx)
    }

    pub fn has_arithmetic_data(&self) -> bool {
        !matches!(self.arithmetic, ArithmeticData::Unavailable)
    }

    /// Λ_F(n), requiring a sieve covering n.
    pub fn lambda_coefficient(&self, n: u64, sieve: &PrimeSieve, ctx: &PrecisionContext) -> Result<Float> {
        match &self.arithmetic {
            ArithmeticData::VonMangoldt => Ok(sieve.lambda(n, ctx)),
            ArithmeticData::DirichletCharacter { modulus, values } => {
                let chi = values[(n % modulus) as usize];
                Ok(sieve.lambda(n, ctx) * chi)
            }
            ArithmeticData::Unavailable => Err(Error::MissingArithmeticData(self.name.clone())),
        }
    }

    /// Weight w(p) with Λ_F(p^e) = w(p) log p, or None if unavailable.
    pub fn prime_power_weight(&self, q: u64) -> Option<i64> {
        match &self.arithmetic {
            ArithmeticData::VonMangoldt => Some(1),
            ArithmeticData::DirichletCharacter { modulus, values } => Some(values[(q % modulus) as usize]),
            ArithmeticData::Unavailable => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selberg::presets::preset;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256)
    }

    #[test]
    fn degrees() {
        assert_eq!(preset("riemann-zeta").unwrap().degree(), Rational::from(1));
        assert_eq!(preset("hecke(11)").unwrap().degree(), Rational::from(2));
        let mut d = preset("riemann-zeta").unwrap();
        d.gamma_factors.push(GammaFactor::new(Rational::from((1, 2)), Rational::new()));
        assert_eq!(d.degree(), Rational::from(2));
    }

    #[test]
    fn lambda_invariants() {
        let c = ctx();
        assert_eq!(preset("riemann-zeta").unwrap().lambda_invariant(&c), 0.5);
        for n in 1..=6 {
            let d = preset(&format!("gl({n})-toy")).unwrap();
            assert_eq!(d.lambda_invariant(&c), Float::with_val(64, 1) >> n);
        }
        assert_eq!(preset("hecke(7)").unwrap().lambda_invariant(&c), 1);
    }

    #[test]
    fn c_constants() {
        let c = ctx();
        let p = 300;
        let g = Float::with_val(p, Constant::Euler);
        let pi = Float::with_val(p, Constant::Pi);
        let z = preset("riemann-zeta").unwrap().c_constant(&c);
        let want = (Float::with_val(p, &g) - 1u32) / 2u32 - (Float::with_val(p, &pi * 2u32)).ln() / 2u32;
        assert!(Float::with_val(p, &z - &want).abs() < 1e-70);
        assert!((z.to_f64() + 1.13033070).abs() < 1e-8);

        let h = preset("hecke(1)").unwrap().c_constant(&c);
        let want = Float::with_val(p, &g) - 1u32 - (pi * 2u32).ln();
        assert!(Float::with_val(p, &h - &want).abs() < 1e-70);
    }

    #[test]
    fn c_constant_with_unit_log_term() {
        // λ Q² = 1 for a single factor λ = 1 with Q = 1.
        let c = ctx();
        let d = SelbergDescriptor {
            name: "unit".into(),
            m_f: 0,
            q: ScaleFactor { radicand: Rational::from(1), pi_power: Rational::new() },
            gamma_factors: vec![GammaFactor::new(Rational::from(1), Rational::from((1, 2)))],
            omega: ("1".into(), "0".into()),
            arithmetic: ArithmeticData::Unavailable,
        };
        let g = Float::with_val(300, Constant::Euler);
        assert!(Float::with_val(300, d.c_constant(&c) - (g - 1u32)).abs() < 1e-70);
    }

    #[test]
    fn hecke_scale() {
        let c = ctx();
        let q = preset("hecke(11)").unwrap().q_value(&c);
        let want = Float::with_val(300, 11).sqrt() / (Float::with_val(300, Constant::Pi) * 2u32);
        assert!(Float::with_val(300, &q - &want).abs() < 1e-70);
    }

    #[test]
    fn validation() {
        let c = ctx();
        let mut d = preset("riemann-zeta").unwrap();
        assert!(d.validate(&c).is_ok());
        d.gamma_factors[0].lambda = Rational::new();
        assert!(matches!(d.validate(&c), Err(Error::InvalidDescriptor(_))));
        let mut d = preset("riemann-zeta").unwrap();
        d.gamma_factors[0].mu = Rational::from(-1);
        assert!(d.validate(&c).is_err());
        let mut d = preset("riemann-zeta").unwrap();
        d.omega = ("0.5".into(), "0".into());
        assert!(d.validate(&c).is_err());
        d.omega = ("0.6".into(), "0.8".into());
        assert!(d.validate(&c).is_ok());
    }

    #[test]
    fn coefficients() {
        let c = ctx();
        let sieve = PrimeSieve::new(100).unwrap();
        let chi4 = preset("dirichlet-chi4").unwrap();
        let v = chi4.lambda_coefficient(3, &sieve, &c).unwrap();
        assert!(Float::with_val(300, v + Float::with_val(300, 3).ln()).abs() < 1e-70);
        assert!(chi4.lambda_coefficient(2, &sieve, &c).unwrap().is_zero());
        let toy = preset("gl(3)-toy").unwrap();
        assert!(matches!(toy.lambda_coefficient(2, &sieve, &c), Err(Error::MissingArithmeticData(_))));
    }
}
