//! Working-precision bookkeeping shared by every numeric routine.
//!
//! There is no global precision: each operation takes a [`PrecisionContext`]
//! and allocates its intermediates at `working_bits`. Results are expected to
//! be accurate to roughly `target_bits`; the 64-bit gap absorbs ordinary
//! rounding growth. Routines that know they lose bits to cancellation ask for
//! a raised context through [`PrecisionContext::for_cancellation`].

use rug::float::{Round, Special};
use rug::ops::AssignRound;
use rug::{Assign, Float};

/// Bits kept between the requested accuracy and the arithmetic precision.
pub const GUARD_BITS: u32 = 64;

/// Upper limit on any working precision we allocate.
pub const MAX_WORKING_BITS: u32 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EscalationPolicy {
    /// Raise precision where an algorithm is known to cancel.
    Escalate,
    /// Evaluate at exactly `working_bits`, whatever the cancellation.
    Fixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    working_bits: u32,
    target_bits: u32,
    max_escalations: u32,
    policy: EscalationPolicy,
}

impl PrecisionContext {
    pub const DEFAULT_MAX_ESCALATIONS: u32 = 4;

    /// Escalating context aiming for `target_bits` of accuracy.
    pub fn new(target_bits: u32) -> Self {
        assert!(target_bits > 0, "target precision must be positive");
        assert!(target_bits + GUARD_BITS <= MAX_WORKING_BITS, "target precision too large");
        PrecisionContext {
            working_bits: target_bits + GUARD_BITS,
            target_bits,
            max_escalations: Self::DEFAULT_MAX_ESCALATIONS,
            policy: EscalationPolicy::Escalate,
        }
    }

    /// Escalating context whose arithmetic runs at `working_bits`; the target is
    /// whatever the guard band leaves.
    pub fn with_working_bits(working_bits: u32) -> Self {
        assert!(working_bits > GUARD_BITS, "working precision must exceed the guard band");
        Self::new(working_bits - GUARD_BITS)
    }

    /// Context that never raises precision. Used to expose the cancellation
    /// hazard; below 65 bits it has no guard band at all.
    pub fn fixed(working_bits: u32) -> Self {
        assert!(working_bits >= 2, "working precision too small");
        PrecisionContext {
            working_bits,
            target_bits: working_bits.saturating_sub(GUARD_BITS).max(1),
            max_escalations: 0,
            policy: EscalationPolicy::Fixed,
        }
    }

    pub fn with_max_escalations(mut self, max_escalations: u32) -> Self {
        self.max_escalations = max_escalations;
        self
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn target_bits(&self) -> u32 {
        self.target_bits
    }

    pub fn max_escalations(&self) -> u32 {
        self.max_escalations
    }

    pub fn policy(&self) -> EscalationPolicy {
        self.policy
    }

    pub fn escalates(&self) -> bool {
        self.policy == EscalationPolicy::Escalate
    }

    /// Context for a computation that cancels up to `lost_bits`: the target
    /// grows by `lost_bits` and `working_bits >= lost + target + 64`.
    /// Fixed contexts are returned unchanged.
    pub fn for_cancellation(&self, lost_bits: u32) -> Self {
        if !self.escalates() {
            return *self;
        }
        let target = (self.target_bits + lost_bits).min(MAX_WORKING_BITS - GUARD_BITS);
        PrecisionContext {
            working_bits: (self.working_bits + lost_bits).max(target + GUARD_BITS).min(MAX_WORKING_BITS),
            target_bits: target,
            ..*self
        }
    }

    /// Adds `extra` bits to both target and working precision.
    pub fn raised(&self, extra: u32) -> Self {
        PrecisionContext {
            working_bits: (self.working_bits + extra).min(MAX_WORKING_BITS),
            target_bits: (self.target_bits + extra).min(MAX_WORKING_BITS - GUARD_BITS),
            ..*self
        }
    }

    /// The context used for escalation attempt `attempt` (0 = this one).
    pub fn escalation(&self, attempt: u32) -> Self {
        if attempt == 0 {
            return *self;
        }
        let step = (self.target_bits / 2).max(32);
        self.raised(step.saturating_mul(attempt))
    }

    /// A float at working precision.
    pub fn real<T>(&self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.working_bits, value)
    }

    pub fn zero(&self) -> Float {
        Float::with_val(self.working_bits, Special::Zero)
    }

    /// 2^-working_bits.
    pub fn epsilon(&self) -> Float {
        pow2(self.working_bits, -(self.working_bits as i32))
    }

    /// 2^-target_bits.
    pub fn target_epsilon(&self) -> Float {
        pow2(self.working_bits, -(self.target_bits as i32))
    }

    /// Rounds `value` to this context's working precision.
    pub fn round(&self, value: &Float) -> Float {
        let mut out = self.zero();
        let _ = out.assign_round(value, Round::Nearest);
        out
    }
}

/// 2^exp at `prec` bits (exact).
pub fn pow2(prec: u32, exp: i32) -> Float {
    Float::with_val(prec, 1) << exp
}

/// log2 |x| as f64, or -inf for zero.
pub fn log2_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    match x.get_exp() {
        Some(e) => {
            let mantissa = Float::with_val(53, x.abs_ref()) >> e;
            e as f64 + mantissa.to_f64().log2()
        }
        None => f64::INFINITY,
    }
}
