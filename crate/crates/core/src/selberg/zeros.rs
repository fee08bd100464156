use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::error::{Error, Result};

/// Positive ordinates γ of zeros 1/2 + iγ, strictly increasing.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    ordinates: Vec<Float>,
    source_precision_bits: u32,
    label: String,
}

/// Ordinates of the first 100000 zeta zeros, 15 fractional digits.
pub const VENDORED_ZETA_ZEROS: &str = include_str!("../../data/zeta_zeros_100k.txt");

/// Bits carried by the vendored table (15 decimals after the point, |γ| < 10^5).
pub const VENDORED_ZETA_BITS: u32 = 64;

impl ZeroTable {
    pub fn new(ordinates: Vec<Float>, source_precision_bits: u32, label: impl Into<String>) -> Result<Self> {
        for (i, w) in ordinates.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::ZeroTableOrder { line: i + 2 });
            }
        }
        if let Some(first) = ordinates.first() {
            if *first <= 0 {
                return Err(Error::ZeroTableParse { line: 1, msg: "ordinate must be positive".into() });
            }
        }
        Ok(ZeroTable { ordinates, source_precision_bits, label: label.into() })
    }

    pub fn ordinates(&self) -> &[Float] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn source_precision_bits(&self) -> u32 {
        self.source_precision_bits
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Largest stored ordinate, or 0 for an empty table.
    pub fn max_ordinate(&self) -> f64 {
        self.ordinates.last().map_or(0.0, |g| g.to_f64())
    }

    /// Number of ordinates ≤ t.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.ordinates.partition_point(|g| *g <= t)
    }

    /// The same table restricted to ordinates ≤ t.
    pub fn truncated(&self, t: f64) -> ZeroTable {
        ZeroTable {
            ordinates: self.ordinates[..self.count_up_to(t)].to_vec(),
            source_precision_bits: self.source_precision_bits,
            label: format!("{} (γ ≤ {t})", self.label),
        }
    }
}

/// Parses one ordinate per line; blank lines and `#` comments are skipped.
pub fn parse_zero_table(text: &str, declared_bits: u32, label: &str) -> Result<ZeroTable> {
    if declared_bits < 2 {
        return Err(Error::InvalidArgument("declared precision must be at least 2 bits".into()));
    }
    let mut out: Vec<Float> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let v = Float::parse(body)
            .map(|p| Float::with_val(declared_bits, p))
            .map_err(|e| Error::ZeroTableParse { line, msg: format!("{body:?}: {e}") })?;
        if !v.is_finite() || v <= 0 {
            return Err(Error::ZeroTableParse { line, msg: format!("{body:?} is not a positive ordinate") });
        }
        if let Some(prev) = out.last() {
            if v <= *prev {
                return Err(Error::ZeroTableOrder { line });
            }
        }
        out.push(v);
    }
    Ok(ZeroTable { ordinates: out, source_precision_bits: declared_bits, label: label.to_string() })
}

pub fn load_zero_table(path: impl AsRef<Path>, declared_bits: u32) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_zero_table(&text, declared_bits, &path.display().to_string())
}

/// The vendored zeta table, parsed once.
pub fn vendored_zeta_zeros() -> Arc<ZeroTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<ZeroTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(VENDORED_ZETA_BITS)
        .or_insert_with(|| {
            Arc::new(
                parse_zero_table(VENDORED_ZETA_ZEROS, VENDORED_ZETA_BITS, "zeta zeros (vendored, 100000)")
                    .expect("vendored zero table is well formed"),
            )
        })
        .clone()
}
