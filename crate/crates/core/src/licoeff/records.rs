//! Per-n results from every route, and positivity reporting.

use rayon::prelude::*;
use rug::Float;

use super::arithmetic::lambda_arithmetic;
use super::asymptotic::lambda_asymptotic;
use super::eta::{eta_constants, EtaMethod, MAX_ETA_INDEX};
use super::zerosum::ZeroSumEvaluator;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::selberg::{SelbergDescriptor, ZeroTable};

#[derive(Clone, Debug)]
pub struct LiRecord {
    pub n: u64,
    pub zero_sum: Option<Float>,
    pub zero_sum_tail_bound: Option<Float>,
    pub arithmetic: Option<Float>,
    pub arithmetic_error: Option<Float>,
    pub asymptotic: Float,
    pub s_f: Option<Float>,
    /// Best available λ minus the asymptotic value.
    pub residual_asym: Float,
}

impl LiRecord {
    /// The tightest estimate with its bound; None when only the asymptotic
    /// value (which carries no bound) is present.
    pub fn best(&self) -> Option<(&Float, &Float)> {
        let arith = self.arithmetic.as_ref().zip(self.arithmetic_error.as_ref());
        let zs = self.zero_sum.as_ref().zip(self.zero_sum_tail_bound.as_ref());
        match (arith, zs) {
            (Some(a), Some(z)) => Some(if a.1 <= z.1 { a } else { z }),
            (a, z) => a.or(z),
        }
    }

    pub fn positivity(&self) -> Positivity {
        match self.best() {
            Some((v, b)) => classify(v, b),
            None => Positivity::Indeterminate,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    Positive,
    Negative,
    Indeterminate,
}

impl Positivity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Positivity::Positive => "positive",
            Positivity::Negative => "negative",
            Positivity::Indeterminate => "indeterminate",
        }
    }
}

/// Positive if [v - b, v + b] lies in (0, ∞), negative if in (-∞, 0].
pub fn classify(value: &Float, bound: &Float) -> Positivity {
    let p = value.prec().max(64);
    let lo = Float::with_val(p, value - bound);
    let hi = Float::with_val(p, value + bound);
    if lo > 0 {
        Positivity::Positive
    } else if hi < 0 || (*value <= 0 && hi <= 0) {
        Positivity::Negative
    } else {
        Positivity::Indeterminate
    }
}

#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub flags: Vec<(u64, Positivity)>,
    pub positive: usize,
    pub negative: usize,
    pub indeterminate: usize,
}

impl PositivityReport {
    pub fn all_positive(&self) -> bool {
        self.positive == self.flags.len() && !self.flags.is_empty()
    }

    /// Entries that are not positive.
    pub fn flagged(&self) -> impl Iterator<Item = &(u64, Positivity)> {
        self.flags.iter().filter(|f| f.1 != Positivity::Positive)
    }
}

pub fn positivity_report(records: &[LiRecord]) -> PositivityReport {
    let flags: Vec<(u64, Positivity)> = records.iter().map(|r| (r.n, r.positivity())).collect();
    let count = |p| flags.iter().filter(|f| f.1 == p).count();
    PositivityReport {
        positive: count(Positivity::Positive),
        negative: count(Positivity::Negative),
        indeterminate: count(Positivity::Indeterminate),
        flags,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Methods {
    pub zero_sum: bool,
    pub arithmetic: bool,
}

impl Methods {
    pub const ALL: Methods = Methods { zero_sum: true, arithmetic: true };
}

/// Records for every n in `ns`; the zero sum runs over the whole table.
pub fn li_records(
    f: &SelbergDescriptor,
    ns: &[u64],
    zeros: Option<&ZeroTable>,
    methods: Methods,
    ctx: &PrecisionContext,
) -> Result<Vec<LiRecord>> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let zero_sums = if methods.zero_sum {
        let table = zeros.ok_or_else(|| Error::InvalidArgument("the zero-sum method needs a zero table".into()))?;
        let ev = ZeroSumEvaluator::new(table, table.max_ordinate(), ctx)?;
        Some(ev.sweep(n_max))
    } else {
        None
    };
    let eta = if methods.arithmetic {
        if !f.has_arithmetic_data() {
            return Err(Error::MissingArithmeticData(f.name.clone()));
        }
        let l = n_max.saturating_sub(1) as usize;
        if l > MAX_ETA_INDEX {
            return Err(Error::InsufficientEta { needed: n_max as usize, available: MAX_ETA_INDEX + 1 });
        }
        Some(eta_constants(f, l, EtaMethod::LaurentSeries, ctx)?)
    } else {
        None
    };
    ns.par_iter()
        .map(|&n| {
            let asymptotic = lambda_asymptotic(f, n, ctx);
            let zs = zero_sums.as_ref().map(|z| &z[n as usize]);
            let ar = match &eta {
                Some(e) => Some(lambda_arithmetic(f, n, e, ctx)?),
                None => None,
            };
            let mut rec = LiRecord {
                n,
                zero_sum: zs.map(|z| z.value.clone()),
                zero_sum_tail_bound: zs.map(|z| z.tail_bound.clone()),
                arithmetic: ar.as_ref().map(|a| a.value.clone()),
                arithmetic_error: ar.as_ref().map(|a| Float::with_val(ctx.working_bits(), &a.error_budget)),
                s_f: ar.as_ref().map(|a| a.s_f.value.clone()),
                residual_asym: ctx.zero(),
                asymptotic,
            };
            let best = rec.best().map(|(v, _)| v.clone());
            rec.residual_asym = match best {
                Some(v) => Float::with_val(ctx.working_bits(), &v - &rec.asymptotic),
                None => ctx.zero(),
            };
            Ok(rec)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selberg::preset;

    fn synthetic(v: f64, b: f64) -> LiRecord {
        let c = PrecisionContext::new(64);
        LiRecord {
            n: 1,
            zero_sum: Some(c.real(v)),
            zero_sum_tail_bound: Some(c.real(b)),
            arithmetic: None,
            arithmetic_error: None,
            asymptotic: c.real(0),
            s_f: None,
            residual_asym: c.real(0),
        }
    }

    #[test]
    fn classification_contract() {
        assert_eq!(synthetic(-0.1, 0.01).positivity(), Positivity::Negative);
        assert_eq!(synthetic(0.005, 0.01).positivity(), Positivity::Indeterminate);
        assert_eq!(synthetic(0.5, 0.01).positivity(), Positivity::Positive);
        assert_eq!(synthetic(0.0, 0.0).positivity(), Positivity::Negative);
        let r = positivity_report(&[synthetic(1.0, 0.1), synthetic(-0.1, 0.01), synthetic(0.005, 0.01)]);
        assert_eq!((r.positive, r.negative, r.indeterminate), (1, 1, 1));
        assert_eq!(r.flagged().count(), 2);
        assert!(!r.all_positive());
    }

    #[test]
    fn best_prefers_tighter_bound() {
        let c = PrecisionContext::new(64);
        let mut r = synthetic(0.3, 0.01);
        r.arithmetic = Some(c.real(0.31));
        r.arithmetic_error = Some(c.real(1e-20));
        assert_eq!(r.best().unwrap().0.to_f64(), 0.31);
    }

    #[test]
    fn refuses_toy_arithmetic() {
        let c = PrecisionContext::new(64);
        let f = preset("gl(3)-toy").unwrap();
        let m = Methods { zero_sum: false, arithmetic: true };
        assert!(matches!(li_records(&f, &[1, 2], None, m, &c), Err(Error::MissingArithmeticData(_))));
        let only_asym = li_records(&f, &[1, 2], None, Methods { zero_sum: false, arithmetic: false }, &c).unwrap();
        assert_eq!(only_asym[0].positivity(), Positivity::Indeterminate);
    }
}
