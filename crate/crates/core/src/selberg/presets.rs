use rug::Rational;

use super::descriptor::{ArithmeticData, GammaFactor, ScaleFactor, SelbergDescriptor};
use crate::error::{Error, Result};

/// Names accepted by [`preset`], with N a positive integer.
pub const PRESET_NAMES: &[&str] = &["riemann-zeta", "dirichlet-chi4", "hecke(N)", "gl(N)-toy"];

const MAX_PRESET_N: u64 = 1 << 20;

fn parse_param(name: &str, prefix: &str, suffix: &str) -> Option<Result<u64>> {
    let inner = name.strip_prefix(prefix)?.strip_suffix(suffix)?;
    Some(match inner.trim().parse::<u64>() {
        Ok(n) if (1..=MAX_PRESET_N).contains(&n) => Ok(n),
        _ => Err(Error::UnknownPreset(name.to_string())),
    })
}

fn r(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

/// Descriptor for a named example.
pub fn preset(name: &str) -> Result<SelbergDescriptor> {
    let key = name.trim().to_ascii_lowercase();
    let one = ("1".to_string(), "0".to_string());
    match key.as_str() {
        "riemann-zeta" | "zeta" => {
            return Ok(SelbergDescriptor {
                name: "riemann-zeta".into(),
                m_f: 1,
                q: ScaleFactor { radicand: r(1, 1), pi_power: r(-1, 2) },
                gamma_factors: vec![GammaFactor::new(r(1, 2), r(0, 1))],
                omega: one,
                arithmetic: ArithmeticData::VonMangoldt,
            })
        }
        "dirichlet-chi4" | "chi4" => {
            // (4/π)^{s/2} Γ((s+1)/2) L(s, χ_{-4}).
            return Ok(SelbergDescriptor {
                name: "dirichlet-chi4".into(),
                m_f: 0,
                q: ScaleFactor { radicand: r(4, 1), pi_power: r(-1, 2) },
                gamma_factors: vec![GammaFactor::new(r(1, 2), r(1, 2))],
                omega: one,
                arithmetic: ArithmeticData::DirichletCharacter { modulus: 4, values: vec![0, 1, 0, -1] },
            });
        }
        _ => {}
    }
    if let Some(n) = parse_param(&key, "hecke(", ")") {
        let n = n? as i64;
        // Q = √N/(2π)
        return Ok(SelbergDescriptor {
            name: format!("hecke({n})"),
            m_f: 0,
            q: ScaleFactor { radicand: r(n, 4), pi_power: r(-1, 1) },
            gamma_factors: vec![GammaFactor::new(r(1, 1), r(1, 2))],
            omega: one,
            arithmetic: ArithmeticData::Unavailable,
        });
    }
    if let Some(n) = parse_param(&key, "gl(", ")-toy") {
        let n = n? as i64;
        return Ok(SelbergDescriptor {
            name: format!("gl({n})-toy"),
            m_f: 0,
            q: ScaleFactor { radicand: r(1, 1), pi_power: r(-n, 2) },
            gamma_factors: vec![GammaFactor::new(r(1, 2), r(0, 1)); n as usize],
            omega: one,
            arithmetic: ArithmeticData::Unavailable,
        });
    }
    Err(Error::UnknownPreset(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::PrecisionContext;

    #[test]
    fn known_presets() {
        assert_eq!(preset("riemann-zeta").unwrap().m_f, 1);
        assert_eq!(preset("gl(3)-toy").unwrap().degree(), Rational::from(3));
        assert_eq!(preset("Hecke(11)").unwrap().name, "hecke(11)");
        let c = PrecisionContext::new(128);
        for name in ["riemann-zeta", "dirichlet-chi4", "hecke(11)", "gl(4)-toy"] {
            preset(name).unwrap().validate(&c).unwrap();
        }
    }

    #[test]
    fn unknown_presets() {
        for name in ["", "zeta2", "hecke()", "hecke(0)", "gl(x)-toy", "gl(3)"] {
            assert!(matches!(preset(name), Err(Error::UnknownPreset(_))), "{name}");
        }
    }
}
