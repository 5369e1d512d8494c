//! Freeness analysis from combinatorial data alone.
//!
//! For a free arrangement with `r = mdr(f) < d/2` the du Plessis-Wall
//! equality `tau = (d-1)(d-r-1) + r^2` holds, so `r` must be an integer root
//! of `r^2 - (d-1) r + (d-1)^2 - tau = 0`. A weak combinatorics admitting such
//! a root is reported as *freeness-compatible*; that is weaker than free.

use serde::{Deserialize, Serialize};

use crate::combinatorics::WeakCombinatorics;
use crate::error::{Error, Result};
use crate::exact::{binom2, exact_sqrt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentPair {
    pub d1: u32,
    pub d2: u32,
}

impl ExponentPair {
    pub fn new(a: u32, b: u32) -> Self {
        Self {
            d1: a.min(b),
            d2: a.max(b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreenessVerdict {
    FreenessCompatible,
    NotCompatible,
    TrivialPencil,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub discriminant: i64,
    pub integer_roots: Vec<u32>,
    pub compatible_exponents: Option<ExponentPair>,
    pub verdict: FreenessVerdict,
}

/// Upper bound on the total Tjurina number of a reduced curve of degree `d`
/// with `mdr = r`.
pub fn dpw_tau_max(d: u32, r: u32) -> Result<i64> {
    if d < 2 || r >= d {
        return Err(Error::InvalidArgument(format!(
            "need d >= 2 and 0 <= r <= d-1, got d = {d}, r = {r}"
        )));
    }
    let (d, r) = (d as i64, r as i64);
    let base = (d - 1) * (d - r - 1) + r * r;
    if 2 * r < d {
        Ok(base)
    } else {
        Ok(base - binom2(2 * r - d + 2))
    }
}

/// Discriminant `4 tau - 3 (d-1)^2` and the integer roots in `[0, d-1]`.
pub fn freeness_roots(d: u32, tau: u64) -> (i64, Vec<u32>) {
    let dm1 = d as i64 - 1;
    let disc = 4 * tau as i64 - 3 * dm1 * dm1;
    let mut roots = Vec::new();
    if let Some(s) = exact_sqrt(disc) {
        if (dm1 + s) % 2 == 0 {
            for r in [(dm1 - s) / 2, (dm1 + s) / 2] {
                if (0..=dm1).contains(&r) && !roots.contains(&(r as u32)) {
                    roots.push(r as u32);
                }
            }
        }
    }
    (disc, roots)
}

pub fn freeness_compatible(wc: &WeakCombinatorics) -> Result<FreenessReport> {
    wc.require_consistent()?;
    let d = wc.d();
    let tau = wc.total_tjurina();
    let (discriminant, integer_roots) = freeness_roots(d, tau);
    if wc.is_pencil() {
        return Ok(FreenessReport {
            discriminant,
            integer_roots,
            compatible_exponents: Some(ExponentPair::new(0, d.saturating_sub(1))),
            verdict: FreenessVerdict::TrivialPencil,
        });
    }
    let exponent = integer_roots
        .iter()
        .copied()
        .filter(|&r| 2 * r < d)
        .find(|&r| dpw_tau_max(d, r).ok() == Some(tau as i64));
    let (compatible_exponents, verdict) = match exponent {
        Some(r) => (
            Some(ExponentPair::new(r, d - 1 - r)),
            FreenessVerdict::FreenessCompatible,
        ),
        None => (None, FreenessVerdict::NotCompatible),
    };
    Ok(FreenessReport {
        discriminant,
        integer_roots,
        compatible_exponents,
        verdict,
    })
}
