//! Constants η_F(l) defined by -F'/F(s) = m_F/(s-1) + Σ_{l>=0} η_F(l)(s-1)^l.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::selberg::{ArithmeticData, SelbergDescriptor};
use crate::specfun::{generalized_stieltjes, von_mangoldt_sieve};

/// Largest index L accepted by [`eta_constants`].
pub const MAX_ETA_INDEX: usize = 64;

/// Cutoffs of the direct-limit route.
pub const DIRECT_LIMIT_POINTS: [u64; 3] = [100_000, 1_000_000, 10_000_000];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaMethod {
    /// Power series of log((s-1)^{m_F} F(s)) from Stieltjes constants.
    LaurentSeries,
    /// Truncated prime sums at the cutoffs in [`DIRECT_LIMIT_POINTS`].
    DirectLimit,
}

#[derive(Clone, Debug)]
pub struct EtaTable {
    values: Vec<Float>,
    error_estimates: Vec<Float>,
    method: EtaMethod,
    accuracy_bits: u32,
}

impl EtaTable {
    pub fn new(values: Vec<Float>, error_estimates: Vec<Float>, method: EtaMethod, accuracy_bits: u32) -> Result<Self> {
        if values.is_empty() || values.len() != error_estimates.len() {
            return Err(Error::InvalidArgument("eta table needs matching, non-empty value and error lists".into()));
        }
        Ok(EtaTable { values, error_estimates, method, accuracy_bits })
    }

    pub fn values(&self) -> &[Float] {
        &self.values
    }

    pub fn error_estimates(&self) -> &[Float] {
        &self.error_estimates
    }

    pub fn get(&self, l: usize) -> Option<&Float> {
        self.values.get(l)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn method(&self) -> EtaMethod {
        self.method
    }

    /// Absolute accuracy 2^-accuracy_bits claimed for every entry.
    pub fn accuracy_bits(&self) -> u32 {
        self.accuracy_bits
    }
}

/// η_F(0..=L).
pub fn eta_constants(f: &SelbergDescriptor, l_max: usize, method: EtaMethod, ctx: &PrecisionContext) -> Result<EtaTable> {
    if l_max > MAX_ETA_INDEX {
        return Err(Error::InvalidArgument(format!("eta index {l_max} exceeds the limit {MAX_ETA_INDEX}")));
    }
    if !f.has_arithmetic_data() {
        return Err(Error::MissingArithmeticData(f.name.clone()));
    }
    match method {
        EtaMethod::LaurentSeries => laurent(f, l_max, ctx),
        EtaMethod::DirectLimit => direct_limit(f, l_max, ctx),
    }
}

/// Coefficients c_0..=c_len of (s-1)^{m_F} F(s) about s = 1, without the
/// elementary factor q^{-s} for characters.
fn regular_part(f: &SelbergDescriptor, len: usize, c: &PrecisionContext) -> Result<(Vec<Float>, Float)> {
    let p = c.working_bits();
    let mut coeffs = vec![Float::new(p); len + 1];
    let mut fact = Integer::from(1);
    match &f.arithmetic {
        ArithmeticData::VonMangoldt => {
            if f.m_f != 1 {
                return Err(Error::UnsupportedDescriptor(format!(
                    "{}: von Mangoldt coefficients need m_F = 1 (Riemann zeta)",
                    f.name
                )));
            }
            // x ζ(1+x) = 1 + Σ_k (-1)^k γ_k/k! x^{k+1}
            coeffs[0] = Float::with_val(p, 1);
            for k in 0..len {
                if k > 0 {
                    fact *= k as u32;
                }
                let g = generalized_stieltjes(k as u32, &Rational::from(1), c)?;
                let t = g / Float::with_val(p, &fact);
                coeffs[k + 1] = if k % 2 == 0 { t } else { -t };
            }
            Ok((coeffs, Float::new(p)))
        }
        ArithmeticData::DirichletCharacter { modulus, values } => {
            if f.m_f != 0 || values.iter().sum::<i64>() != 0 {
                return Err(Error::UnsupportedDescriptor(format!(
                    "{}: the Laurent route needs a non-principal character",
                    f.name
                )));
            }
            // L(1+x, χ) = q^{-1-x} Σ_a χ(a) Σ_k (-1)^k γ_k(a/q)/k! x^k
            for k in 0..=len {
                if k > 0 {
                    fact *= k as u32;
                }
                let mut acc = Float::new(p);
                for (a, &chi) in values.iter().enumerate() {
                    if chi == 0 {
                        continue;
                    }
                    let g = generalized_stieltjes(k as u32, &Rational::from((a as u64, *modulus)), c)?;
                    acc += g * chi;
                }
                let t = acc / Float::with_val(p, &fact);
                coeffs[k] = if k % 2 == 0 { t } else { -t };
            }
            Ok((coeffs, Float::with_val(p, *modulus).ln()))
        }
        ArithmeticData::Unavailable => Err(Error::MissingArithmeticData(f.name.clone())),
    }
}

/// -[x^l] P'/P for l = 0..=l_max, plus log q at l = 0.
fn laurent_at(f: &SelbergDescriptor, l_max: usize, c: &PrecisionContext) -> Result<Vec<Float>> {
    let p = c.working_bits();
    let (pc, log_q) = regular_part(f, l_max + 1, c)?;
    if pc[0].is_zero() {
        return Err(Error::UnsupportedDescriptor(format!("{}: F vanishes at s = 1", f.name)));
    }
    let d: Vec<Float> = (0..=l_max).map(|j| Float::with_val(p, &pc[j + 1] * (j as u32 + 1))).collect();
    let mut q: Vec<Float> = Vec::with_capacity(l_max + 1);
    for j in 0..=l_max {
        let mut acc = d[j].clone();
        for i in 1..=j {
            acc -= Float::with_val(p, &pc[i] * &q[j - i]);
        }
        q.push(acc / &pc[0]);
    }
    let mut eta: Vec<Float> = q.into_iter().map(|v| -v).collect();
    eta[0] += log_q;
    Ok(eta)
}

fn laurent(f: &SelbergDescriptor, l_max: usize, ctx: &PrecisionContext) -> Result<EtaTable> {
    // S_F(n) loses up to n bits, so carry L extra.
    let c = ctx.for_cancellation(l_max as u32 + 8);
    let lo = laurent_at(f, l_max, &c)?;
    let hi = laurent_at(f, l_max, &c.raised(32))?;
    let floor = Float::with_val(64, 1) >> (c.target_bits() as i32);
    let errs = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| Float::with_val(64, Float::with_val(c.working_bits() + 32, a - b).abs()) * 4u32 + &floor)
        .collect();
    EtaTable::new(lo.iter().map(|v| c.round(v)).collect(), errs, EtaMethod::LaurentSeries, c.target_bits())
}

/// Per-cutoff estimates E_l(X) in double precision.
pub fn direct_limit_estimates(f: &SelbergDescriptor, l_max: usize) -> Result<Vec<[f64; 3]>> {
    let xmax = DIRECT_LIMIT_POINTS[2];
    let sieve = von_mangoldt_sieve(xmax)?;
    let m = f.m_f as f64;
    // Kahan-compensated Σ Λ_F(k)(log k)^l/k and ψ_F per cutoff.
    let mut sums = vec![[(0.0f64, 0.0f64); 3]; l_max + 1];
    let mut psi = [(0.0f64, 0.0f64); 3];
    let add = |acc: &mut (f64, f64), v: f64| {
        let y = v - acc.1;
        let t = acc.0 + y;
        acc.1 = (t - acc.0) - y;
        acc.0 = t;
    };
    for (q, p) in sieve.prime_powers() {
        let w = match f.prime_power_weight(q) {
            Some(0) => continue,
            Some(w) => w as f64,
            None => return Err(Error::MissingArithmeticData(f.name.clone())),
        };
        let lam = w * (p as f64).ln();
        let lq = (q as f64).ln();
        for (i, &x) in DIRECT_LIMIT_POINTS.iter().enumerate() {
            if q > x {
                continue;
            }
            add(&mut psi[i], lam);
            let mut term = lam / q as f64;
            for s in sums.iter_mut() {
                add(&mut s[i], term);
                term *= lq;
            }
        }
    }
    let mut out = Vec::with_capacity(l_max + 1);
    for (l, s) in sums.iter().enumerate() {
        let mut row = [0.0; 3];
        for (i, &x) in DIRECT_LIMIT_POINTS.iter().enumerate() {
            let lx = (x as f64).ln();
            let main = m * lx.powi(l as i32 + 1) / (l as f64 + 1.0);
            // Replace the jump of ψ_F at the cutoff by its mean m_F X.
            let boundary = (m * x as f64 - psi[i].0) * lx.powi(l as i32) / x as f64;
            row[i] = s[i].0 - main + boundary;
        }
        out.push(row);
    }
    Ok(out)
}

/// Bound on the tail ∫_X^∞ R(t) g'(t) dt with g = log^l t/t and
/// |R(t)| <= √t log² t/(8π) (conditional on GRH), doubled.
fn direct_limit_tail(l: usize, x: f64) -> f64 {
    let lx = x.ln();
    let m = l as f64 + 2.0;
    if 2.0 * m >= lx {
        return f64::INFINITY;
    }
    let slope = 1.0 + l as f64 / lx;
    2.0 * slope / (8.0 * std::f64::consts::PI) * 2.0 * lx.powf(m) / x.sqrt() / (1.0 - 2.0 * m / lx)
}

fn direct_limit(f: &SelbergDescriptor, l_max: usize, ctx: &PrecisionContext) -> Result<EtaTable> {
    let est = direct_limit_estimates(f, l_max)?;
    let x = DIRECT_LIMIT_POINTS[2] as f64;
    let mut values = Vec::with_capacity(l_max + 1);
    let mut errs = Vec::with_capacity(l_max + 1);
    let mut fact = 1.0f64;
    for (l, row) in est.iter().enumerate() {
        if l > 0 {
            fact *= l as f64;
        }
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let spread = 2.0 * (row[2] - row[1]).abs();
        let err = spread.max(direct_limit_tail(l, x)) / fact;
        values.push(ctx.real(sign * row[2] / fact));
        errs.push(Float::with_val(64, err));
    }
    EtaTable::new(values, errs, EtaMethod::DirectLimit, 0)
}
