//! TOML form of a descriptor. Rationals are written as exact decimals when
//! they terminate and as `p/q` otherwise, so a round trip is lossless.
//!
//! ```toml
//! name = "riemann-zeta"
//! m_f = 1
//! omega = { re = "1", im = "0" }
//! q = { radicand = "1", pi_power = "-0.5" }
//! arithmetic = { kind = "von-mangoldt" }
//!
//! [[gamma_factors]]
//! lambda = "0.5"
//! mu = "0"
//! ```

use std::path::Path;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use super::descriptor::{ArithmeticData, GammaFactor, ScaleFactor, SelbergDescriptor};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    name: String,
    m_f: u32,
    omega: OmegaDoc,
    q: ScaleDoc,
    arithmetic: ArithDoc,
    gamma_factors: Vec<FactorDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OmegaDoc {
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScaleDoc {
    radicand: String,
    pi_power: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorDoc {
    lambda: String,
    mu: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum ArithDoc {
    VonMangoldt,
    DirichletCharacter { modulus: u64, values: Vec<i64> },
    None,
}

/// Parses "-12.5e-3", "7/9" or "3" as an exact rational.
pub fn parse_exact(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Format(format!("not an exact real number: {s:?}"));
    if t.contains(['i', 'I', 'j', 'J']) {
        return Err(Error::UnsupportedDescriptor(format!("complex value {s:?}; only real parameters are supported")));
    }
    if t.contains('/') {
        let r = Rational::parse(t).map_err(|_| bad())?;
        return Ok(Rational::from(r));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let num = Integer::from(Integer::parse(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?);
    let scale = exp - frac_part.len() as i32;
    if scale.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let pow = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
    let mut r = if scale >= 0 { Rational::from(num * pow) } else { Rational::from((num, pow)) };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Decimal rendering when the denominator is 2^a 5^b, else `p/q`.
pub fn format_exact(r: &Rational) -> String {
    let mut d = r.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d.is_divisible_u(2) {
        d /= 2u32;
        twos += 1;
    }
    while d.is_divisible_u(5) {
        d /= 5u32;
        fives += 1;
    }
    if d != 1 {
        return r.to_string();
    }
    let places = twos.max(fives);
    if places == 0 {
        return r.numer().to_string();
    }
    let scaled = Integer::from(r.numer() * Integer::from(Integer::u_pow_u(10, places))) / r.denom();
    let neg = scaled < 0;
    let mut digits = Integer::from(scaled.abs_ref()).to_string();
    if digits.len() <= places as usize {
        digits = format!("{}{digits}", "0".repeat(places as usize + 1 - digits.len()));
    }
    let split = digits.len() - places as usize;
    format!("{}{}.{}", if neg { "-" } else { "" }, &digits[..split], &digits[split..])
}

pub fn descriptor_to_toml(d: &SelbergDescriptor) -> Result<String> {
    let doc = Doc {
        name: d.name.clone(),
        m_f: d.m_f,
        omega: OmegaDoc { re: d.omega.0.clone(), im: d.omega.1.clone() },
        q: ScaleDoc { radicand: format_exact(&d.q.radicand), pi_power: format_exact(&d.q.pi_power) },
        arithmetic: match &d.arithmetic {
            ArithmeticData::VonMangoldt => ArithDoc::VonMangoldt,
            ArithmeticData::DirichletCharacter { modulus, values } => {
                ArithDoc::DirichletCharacter { modulus: *modulus, values: values.clone() }
            }
            ArithmeticData::Unavailable => ArithDoc::None,
        },
        gamma_factors: d
            .gamma_factors
            .iter()
            .map(|g| FactorDoc { lambda: format_exact(&g.lambda), mu: format_exact(&g.mu) })
            .collect(),
    };
    toml::to_string(&doc).map_err(|e| Error::Format(e.to_string()))
}

/// Parses a descriptor; structural validation is left to `validate`.
pub fn descriptor_from_toml(text: &str) -> Result<SelbergDescriptor> {
    let doc: Doc = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let mut factors = Vec::with_capacity(doc.gamma_factors.len());
    for f in &doc.gamma_factors {
        factors.push(GammaFactor::new(parse_exact(&f.lambda)?, parse_exact(&f.mu)?));
    }
    for s in [&doc.omega.re, &doc.omega.im] {
        parse_exact(s)?;
    }
    Ok(SelbergDescriptor {
        name: doc.name,
        m_f: doc.m_f,
        q: ScaleFactor { radicand: parse_exact(&doc.q.radicand)?, pi_power: parse_exact(&doc.q.pi_power)? },
        gamma_factors: factors,
        omega: (doc.omega.re, doc.omega.im),
        arithmetic: match doc.arithmetic {
            ArithDoc::VonMangoldt => ArithmeticData::VonMangoldt,
            ArithDoc::DirichletCharacter { modulus, values } => ArithmeticData::DirichletCharacter { modulus, values },
            ArithDoc::None => ArithmeticData::Unavailable,
        },
    })
}

pub fn load_descriptor(path: impl AsRef<Path>) -> Result<SelbergDescriptor> {
    descriptor_from_toml(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::PrecisionContext;
    use crate::selberg::presets::preset;
    use proptest::prelude::*;

    #[test]
    fn presets_round_trip() {
        let c = PrecisionContext::new(256);
        for name in ["riemann-zeta", "dirichlet-chi4", "hecke(11)", "gl(5)-toy"] {
            let d = preset(name).unwrap();
            let text = descriptor_to_toml(&d).unwrap();
            let back = descriptor_from_toml(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(back.c_constant(&c), d.c_constant(&c));
            assert_eq!(descriptor_to_toml(&back).unwrap(), text);
        }
    }

    #[test]
    fn decimal_forms() {
        assert_eq!(parse_exact("0.5").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_exact("-1.25e1").unwrap(), Rational::from((-25, 2)));
        assert_eq!(parse_exact("7/21").unwrap(), Rational::from((1, 3)));
        assert_eq!(parse_exact(".5").unwrap(), Rational::from((1, 2)));
        assert!(parse_exact("abc").is_err());
        assert!(parse_exact("").is_err());
        assert!(matches!(parse_exact("0.5+1i"), Err(Error::UnsupportedDescriptor(_))));
        assert_eq!(format_exact(&Rational::from((-1, 2))), "-0.5");
        assert_eq!(format_exact(&Rational::from((3, 40))), "0.075");
        assert_eq!(format_exact(&Rational::from((1, 3))), "1/3");
        assert_eq!(format_exact(&Rational::from(-7)), "-7");
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(matches!(descriptor_from_toml("name = 3"), Err(Error::Format(_))));
        let d = preset("riemann-zeta").unwrap();
        let text = descriptor_to_toml(&d).unwrap().replace("mu = \"0\"", "mu = \"0.5i\"");
        assert!(matches!(descriptor_from_toml(&text), Err(Error::UnsupportedDescriptor(_))));
    }

    proptest! {
        #[test]
        fn rationals_round_trip(p in -1_000_000i64..1_000_000, q in 1i64..100_000) {
            let r = Rational::from((p, q));
            prop_assert_eq!(parse_exact(&format_exact(&r)).unwrap(), r);
        }
    }
}
