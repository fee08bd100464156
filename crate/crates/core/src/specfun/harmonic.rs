use rug::{Float, Integer, Rational};

use crate::precision::PrecisionContext;

/// Σ_{j=a}^{b-1} 1/j as an unreduced fraction (p, q).
fn split(a: u64, b: u64) -> (Integer, Integer) {
    if b - a == 1 {
        return (Integer::from(1), Integer::from(a));
    }
    let mid = a + (b - a) / 2;
    let (p1, q1) = split(a, mid);
    let (p2, q2) = split(mid, b);
    (p1 * &q2 + p2 * &q1, q1 * q2)
}

/// h_n = 1 + 1/2 + ... + 1/n exactly.
pub fn harmonic_exact(n: u64) -> Rational {
    if n == 0 {
        return Rational::new();
    }
    let (p, q) = split(1, n + 1);
    Rational::from((p, q))
}

/// h_n rounded once to working precision.
pub fn harmonic(n: u64, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.working_bits(), &harmonic_exact(n))
}
