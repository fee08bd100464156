//! λ_F(n) from the arithmetic side:
//! λ_F(n) = m_F + n(log Q_F - (d_F/2)γ) + S_F(n)
//!          + n Σ_j λ_j(ψ(λ_j + μ_j) + γ) + Σ_j H_n(1 + μ_j/λ_j, 1/λ_j)
//! with S_F(n) = -Σ_{l=1}^{n} C(n,l) η_F(l-1).

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use super::eta::EtaTable;
use crate::error::{Error, Result};
use crate::nrsum::{alt_binomial_sum_detailed, an_envelope, hn_closed_form, hn_direct_detailed, CachedSequence};
use crate::precision::PrecisionContext;
use crate::selberg::SelbergDescriptor;
use crate::specfun::digamma;

/// Largest n for which I_j is summed directly.
pub const N_DIRECT: u64 = 512;

/// A value with an absolute error budget.
#[derive(Clone, Debug)]
pub struct Bounded {
    pub value: Float,
    pub error_bound: Float,
}

/// S_F(n). Needs η_F(0..n-1) accurate to roughly target + n bits.
pub fn s_f(n: u64, eta: &EtaTable, ctx: &PrecisionContext) -> Result<Bounded> {
    if n == 0 {
        return Ok(Bounded { value: ctx.zero(), error_bound: ctx.zero() });
    }
    if eta.len() < n as usize {
        return Err(Error::InsufficientEta { needed: n as usize, available: eta.len() });
    }
    let needed = ctx.target_bits() + n as u32 + 2;
    if ctx.escalates() && needed > eta.accuracy_bits() {
        return Err(Error::InsufficientEtaPrecision { needed, available: eta.accuracy_bits() });
    }
    // f(l) = (-1)^l η(l-1) turns Σ C(n,l) η(l-1) into the alternating form.
    let vals: Vec<Float> = eta.values()[..n as usize]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { -v.clone() } else { v.clone() })
        .collect();
    let bits = if ctx.escalates() { eta.accuracy_bits() } else { u32::MAX };
    let seq = CachedSequence::new(1, bits, vals);
    let sum = alt_binomial_sum_detailed(&seq, n, 1, &ctx.with_max_escalations(0))?;
    // Propagate the table's own error estimates.
    let mut prop = Float::new(64);
    let mut binom = Integer::from(n);
    for l in 1..=n {
        prop += Float::with_val(64, &eta.error_estimates()[l as usize - 1] * &binom);
        binom *= n - l;
        binom /= l + 1;
    }
    Ok(Bounded { value: ctx.round(&-sum.value), error_bound: prop + sum.error_bound })
}

/// n Σ_j λ_j (ψ(λ_j + μ_j) + γ).
pub fn archimedean_term(f: &SelbergDescriptor, n: u64, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.working_bits();
    let g = Float::with_val(p, Constant::Euler);
    let mut acc = Float::new(p);
    for gf in &f.gamma_factors {
        let z = Float::with_val(p, Rational::from(&gf.lambda + &gf.mu));
        let psi = digamma(&z, ctx)?;
        acc += Float::with_val(p, &gf.lambda) * (psi + &g);
    }
    Ok(acc * n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IjPath {
    Direct,
    ClosedForm,
}

#[derive(Clone, Debug)]
pub struct IjTerm {
    pub value: Float,
    pub error_bound: Float,
    pub path: IjPath,
}

/// (m, k) = (1 + μ_j/λ_j, 1/λ_j) for factor j (1-based).
pub fn ij_parameters(f: &SelbergDescriptor, j: usize) -> Result<(Rational, Rational)> {
    let g = j
        .checked_sub(1)
        .and_then(|i| f.gamma_factors.get(i))
        .ok_or_else(|| Error::InvalidArgument(format!("gamma factor index {j} out of range")))?;
    let m = Rational::from(1) + Rational::from(&g.mu / &g.lambda);
    let k = Rational::from(g.lambda.recip_ref());
    Ok((m, k))
}

/// I_j(n) = H_n(1 + μ_j/λ_j, 1/λ_j); direct for n <= N_DIRECT.
pub fn ij_term(f: &SelbergDescriptor, j: usize, n: u64, ctx: &PrecisionContext) -> Result<IjTerm> {
    ij_term_with_crossover(f, j, n, N_DIRECT, ctx)
}

pub fn ij_term_with_crossover(
    f: &SelbergDescriptor,
    j: usize,
    n: u64,
    n_direct: u64,
    ctx: &PrecisionContext,
) -> Result<IjTerm> {
    if n == 0 {
        return Err(Error::InvalidArgument("I_j needs n >= 1".into()));
    }
    let (m, k) = ij_parameters(f, j)?;
    if n <= n_direct {
        let s = hn_direct_detailed(n, &m, &k, ctx)?;
        return Ok(IjTerm { value: ctx.round(&s.value), error_bound: s.error_bound, path: IjPath::Direct });
    }
    let value = hn_closed_form(n, &m, &k, ctx)?;
    // Full size of the oscillating term.
    let bound = an_envelope(n, &k, ctx) * Float::with_val(ctx.working_bits(), &k);
    Ok(IjTerm { value, error_bound: Float::with_val(64, &bound), path: IjPath::ClosedForm })
}

/// The assembled formula with every piece kept.
#[derive(Clone, Debug)]
pub struct ArithmeticLi {
    pub n: u64,
    pub value: Float,
    pub error_budget: Float,
    /// m_F + n(log Q_F - (d_F/2)γ).
    pub linear: Float,
    pub s_f: Bounded,
    pub archimedean: Float,
    pub ij: Vec<IjTerm>,
}

/// λ_F(n) for n >= 1 (and 0 at n = 0), with η from `eta`.
pub fn lambda_arithmetic(f: &SelbergDescriptor, n: u64, eta: &EtaTable, ctx: &PrecisionContext) -> Result<ArithmeticLi> {
    if !f.has_arithmetic_data() {
        return Err(Error::MissingArithmeticData(f.name.clone()));
    }
    let p = ctx.working_bits();
    if n == 0 {
        return Ok(ArithmeticLi {
            n,
            value: ctx.zero(),
            error_budget: ctx.zero(),
            linear: ctx.zero(),
            s_f: Bounded { value: ctx.zero(), error_bound: ctx.zero() },
            archimedean: ctx.zero(),
            ij: Vec::new(),
        });
    }
    let g = Float::with_val(p, Constant::Euler);
    let half_d = Float::with_val(p, &f.degree()) / 2u32;
    let linear = (f.q.ln(ctx) - half_d * g) * n + f.m_f;
    let sf = s_f(n, eta, ctx)?;
    let arch = archimedean_term(f, n, ctx)?;
    let mut ij = Vec::with_capacity(f.gamma_factors.len());
    for j in 1..=f.gamma_factors.len() {
        ij.push(ij_term(f, j, n, ctx)?);
    }
    let mut value = Float::with_val(p, &linear + &sf.value) + &arch;
    let mut budget = Float::with_val(64, &sf.error_bound);
    for t in &ij {
        value += &t.value;
        budget += &t.error_bound;
    }
    // Rounding of the assembly itself.
    budget += Float::with_val(64, value.abs_ref()) >> (ctx.target_bits() as i32);
    Ok(ArithmeticLi { n, value, error_budget: budget, linear, s_f: sf, archimedean: arch, ij })
}
