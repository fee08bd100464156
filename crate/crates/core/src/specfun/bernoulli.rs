//! Exact Bernoulli numbers.
//!
//! Even-index values come from tangent numbers, which are integers and are
//! produced by a short in-place recurrence:
//! `B_{2n} = (-1)^{n-1} 2n T_n / (4^n (4^n - 1))`.

use std::sync::{Arc, Mutex, OnceLock};

use rug::{Float, Integer, Rational};

fn table() -> &'static Mutex<Arc<Vec<Rational>>> {
    static TABLE: OnceLock<Mutex<Arc<Vec<Rational>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Arc::new(Vec::new())))
}

/// Tangent numbers T_1..=T_n.
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return Vec::new();
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u64);
            let b = Integer::from(&t[j] * (j - k + 2) as u64);
            t[j] = a + b;
        }
    }
    t.remove(0);
    t
}

/// B_2, B_4, ..., B_{2n}; at least `n` entries.
pub fn bernoulli_even(n: usize) -> Arc<Vec<Rational>> {
    let mut guard = table().lock().unwrap_or_else(|e| e.into_inner());
    if guard.len() >= n {
        return Arc::clone(&guard);
    }
    let want = n.max(2 * guard.len()).max(16);
    let tangents = tangent_numbers(want);
    let mut out = Vec::with_capacity(want);
    for (i, t) in tangents.into_iter().enumerate() {
        let m = i as u32 + 1;
        let four_m = Integer::from(1) << (2 * m);
        let den = Integer::from(&four_m - 1u32) * &four_m;
        let mut num = t * (2 * m);
        if m % 2 == 0 {
            num = -num;
        }
        out.push(Rational::from((num, den)));
    }
    let arc = Arc::new(out);
    *guard = Arc::clone(&arc);
    arc
}

/// The Bernoulli number B_k (with B_1 = -1/2).
pub fn bernoulli(k: u32) -> Rational {
    match k {
        0 => Rational::from(1),
        1 => Rational::from((-1, 2)),
        _ if k % 2 == 1 => Rational::new(),
        _ => bernoulli_even(k as usize / 2)[k as usize / 2 - 1].clone(),
    }
}

/// B_{2i}/(2i)! for i = 1..=n as floats at `prec` bits.
pub fn scaled_bernoulli_floats(n: usize, prec: u32) -> Vec<Float> {
    let b = bernoulli_even(n);
    let mut fact = Integer::from(1);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        fact *= (2 * i - 1) as u64;
        fact *= (2 * i) as u64;
        let r = Rational::from((&b[i - 1]).clone()) / &fact;
        out.push(Float::with_val(prec, &r));
    }
    out
}
