//! n-range syntax: `A..B`, `A..B..STEP`, or log-spaced with a count.

use std::fmt;

#[derive(Debug, PartialEq, Eq)]
pub struct RangeError(pub String);

impl fmt::Display for RangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn parts(spec: &str) -> Result<Vec<u64>, RangeError> {
    let bad = || RangeError(format!("bad n-range {spec:?}; expected A..B or A..B..STEP"));
    let fields: Vec<&str> = spec.split("..").collect();
    if !(2..=3).contains(&fields.len()) {
        return Err(bad());
    }
    fields.iter().map(|f| f.trim().parse::<u64>().map_err(|_| bad())).collect()
}

/// Inclusive linear range.
pub fn linear(spec: &str) -> Result<Vec<u64>, RangeError> {
    let p = parts(spec)?;
    let (a, b) = (p[0], p[1]);
    let step = p.get(2).copied().unwrap_or(1);
    if step == 0 {
        return Err(RangeError("step must be positive".into()));
    }
    if a > b {
        return Err(RangeError(format!("empty n-range {spec:?}")));
    }
    Ok((a..=b).step_by(step as usize).collect())
}

/// `count` points spaced evenly in log n over [A, B], rounded and deduplicated.
pub fn log_spaced(spec: &str, count: usize) -> Result<Vec<u64>, RangeError> {
    let p = parts(spec)?;
    if p.len() != 2 {
        return Err(RangeError("log-spaced ranges take A..B without a step".into()));
    }
    let (a, b) = (p[0], p[1]);
    if a == 0 || a > b {
        return Err(RangeError(format!("log-spaced range {spec:?} needs 1 <= A <= B")));
    }
    if count == 0 {
        return Err(RangeError("count must be positive".into()));
    }
    if count == 1 || a == b {
        return Ok(vec![a]);
    }
    let (la, lb) = ((a as f64).ln(), (b as f64).ln());
    let mut v: Vec<u64> = (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            ((la + t * (lb - la)).exp().round() as u64).clamp(a, b)
        })
        .collect();
    v.dedup();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms() {
        assert_eq!(linear("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(linear("0..10..5").unwrap(), vec![0, 5, 10]);
        assert_eq!(linear("3..3").unwrap(), vec![3]);
        assert!(linear("5..1").is_err());
        assert!(linear("1..5..0").is_err());
        assert!(linear("x").is_err());
    }

    #[test]
    fn log_forms() {
        let v = log_spaced("2..2048", 11).unwrap();
        assert_eq!(v.first(), Some(&2));
        assert_eq!(v.last(), Some(&2048));
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(log_spaced("1..3", 50).unwrap(), vec![1, 2, 3]);
        assert!(log_spaced("0..10", 3).is_err());
    }
}
