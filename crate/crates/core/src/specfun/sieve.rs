//! Prime sieve and the von Mangoldt function.

use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Largest sieve limit accepted.
pub const SIEVE_CAPACITY: u64 = 1_000_000_000;

/// Odd-only bit sieve up to `limit` inclusive.
#[derive(Debug)]
pub struct PrimeSieve {
    limit: u64,
    composite: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > SIEVE_CAPACITY {
            return Err(Error::Capacity { requested: limit, limit: SIEVE_CAPACITY });
        }
        let slots = (limit / 2 + 1) as usize;
        let mut composite = vec![0u64; slots / 64 + 1];
        let mut i = 3u64;
        while i * i <= limit {
            let idx = (i / 2) as usize;
            if composite[idx / 64] >> (idx % 64) & 1 == 0 {
                let mut j = i * i;
                while j <= limit {
                    let jdx = (j / 2) as usize;
                    composite[jdx / 64] |= 1 << (jdx % 64);
                    j += 2 * i;
                }
            }
            i += 2;
        }
        Ok(PrimeSieve { limit, composite })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} beyond sieve limit {}", self.limit);
        if n < 2 {
            return false;
        }
        if n % 2 == 0 {
            return n == 2;
        }
        let idx = (n / 2) as usize;
        self.composite[idx / 64] >> (idx % 64) & 1 == 0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(2)
            .filter(move |_| self.limit >= 2)
            .chain((3..=self.limit).step_by(2).filter(move |&n| self.is_prime(n)))
    }

    /// All prime powers p^e <= limit as (p^e, p), in no particular order.
    pub fn prime_powers(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let limit = self.limit;
        self.primes().flat_map(move |p| {
            std::iter::successors(Some(p), move |&q| q.checked_mul(p).filter(|&r| r <= limit)).map(move |q| (q, p))
        })
    }

    /// Some(p) if n = p^e with e >= 1.
    pub fn prime_power_base(&self, n: u64) -> Option<u64> {
        if n < 2 {
            return None;
        }
        let p = if n % 2 == 0 {
            2
        } else {
            let mut d = 3;
            loop {
                if d * d > n {
                    break n;
                }
                if n % d == 0 {
                    break d;
                }
                d += 2;
            }
        };
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        (m == 1).then_some(p)
    }

    /// Λ(n) at working precision.
    pub fn lambda(&self, n: u64, ctx: &PrecisionContext) -> Float {
        match self.prime_power_base(n) {
            Some(p) => Float::with_val(ctx.working_bits(), p).ln(),
            None => ctx.zero(),
        }
    }

    /// Chebyshev ψ(x) = Σ_{n<=x} Λ(n), in double precision.
    pub fn chebyshev_psi(&self, x: u64) -> f64 {
        let x = x.min(self.limit);
        let mut s = 0.0;
        for (q, p) in self.prime_powers() {
            if q <= x {
                s += (p as f64).ln();
            }
        }
        s
    }
}

/// Table n ↦ Λ(n) for n <= x, backed by a shared sieve.
pub fn von_mangoldt_sieve(x: u64) -> Result<Arc<PrimeSieve>> {
    if x < 2 {
        return Err(Error::InvalidArgument("sieve limit must be at least 2".into()));
    }
    static SHARED: OnceLock<Mutex<Option<Arc<PrimeSieve>>>> = OnceLock::new();
    let cell = SHARED.get_or_init(|| Mutex::new(None));
    let mut guard = cell.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(s) = guard.as_ref() {
        if s.limit >= x {
            return Ok(Arc::clone(s));
        }
    }
    let s = Arc::new(PrimeSieve::new(x)?);
    *guard = Some(Arc::clone(&s));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn examples() {
        let s = PrimeSieve::new(1000).unwrap();
        let ctx = PrecisionContext::new(64);
        assert_eq!(s.lambda(8, &ctx), Float::with_val(128, 2).ln());
        assert!(s.lambda(6, &ctx).is_zero());
        assert!(s.lambda(1, &ctx).is_zero());
        assert_eq!(s.prime_power_base(49), Some(7));
    }

    #[test]
    fn chebyshev_100_against_trial_division() {
        let s = von_mangoldt_sieve(100).unwrap();
        let mut oracle = 0.0;
        for n in 2..=100u64 {
            let mut m = n;
            let p = (2..=n).find(|&d| n % d == 0 && trial_prime(d)).unwrap();
            while m % p == 0 {
                m /= p;
            }
            if m == 1 {
                oracle += (p as f64).ln();
            }
        }
        let v = s.chebyshev_psi(100);
        assert!((v - oracle).abs() < 1e-12);
        assert!((v - 94.045).abs() < 1e-3);
    }

    #[test]
    fn primality_matches_trial_division() {
        let s = PrimeSieve::new(5000).unwrap();
        for n in 0..=5000 {
            assert_eq!(s.is_prime(n), trial_prime(n), "{n}");
        }
        assert_eq!(s.primes().count(), 669);
    }

    #[test]
    fn capacity() {
        assert!(matches!(PrimeSieve::new(SIEVE_CAPACITY + 1), Err(Error::Capacity { .. })));
    }
}
