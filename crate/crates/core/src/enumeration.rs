//! Exhaustive enumeration of quadruple-bounded weak combinatorics under a
//! filter pipeline.
//!
//! For each `d` the enumerator walks `n4`, then `n3`; `n2` is fixed by the
//! naive count `n2 + 3 n3 + 6 n4 = C(d,2)`. Pencils are never emitted.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{free_pair_cap, free_quadruple_floor, FilterVerdict, WeakCombinatorics};
use crate::config::{Filter, FilterConfig};
use crate::error::{Error, Result};
use crate::exact::ceil_div;
use crate::freeness::FreenessReport;

pub const MIN_DEGREE: u32 = 3;
pub const MAX_DEGREE: u32 = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRow {
    #[serde(flatten)]
    pub wc: WeakCombinatorics,
    pub verdicts: Vec<FilterVerdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub freeness: Option<FreenessReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m_arrangement: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub d_min: u32,
    pub d_max: u32,
    pub config: FilterConfig,
    /// Sorted by `(d, n2, n3, n4)`.
    pub rows: Vec<EnumerationRow>,
}

impl EnumerationResult {
    pub fn tuples(&self) -> Vec<WeakCombinatorics> {
        self.rows.iter().map(|r| r.wc.clone()).collect()
    }
}

fn check_range(d_min: u32, d_max: u32) -> Result<()> {
    if d_min < MIN_DEGREE || d_max > MAX_DEGREE || d_min > d_max {
        return Err(Error::InvalidArgument(format!(
            "degree range {d_min}..{d_max} must lie within {MIN_DEGREE}..{MAX_DEGREE}"
        )));
    }
    Ok(())
}

/// Evaluates `config` on `(d; n2, n3, n4)`; `None` when the tuple is a pencil,
/// violates the caps, or fails a filter.
pub fn admit(config: &FilterConfig, d: u32, n2: u64, n3: u64, n4: u64) -> Option<EnumerationRow> {
    if let Some(caps) = &config.search_caps {
        if !caps.admits(n2, n3, n4) {
            return None;
        }
    }
    let wc = WeakCombinatorics::quad(d, n2, n3, n4).ok()?;
    if !wc.is_consistent() || wc.is_pencil() {
        return None;
    }
    let eval = config.evaluate(&wc);
    eval.passes.then_some(EnumerationRow {
        wc,
        verdicts: eval.verdicts,
        freeness: eval.freeness,
        m_arrangement: eval.m_arrangement,
    })
}

fn enumerate_degree(d: u32, config: &FilterConfig) -> Vec<EnumerationRow> {
    let pairs = (d as u64) * (d as u64 - 1) / 2;
    let free = config.active_filters().contains(&Filter::FreeBounds);
    let caps = config.search_caps;
    let n4_lo = if free { free_quadruple_floor(d).max(0) as u64 } else { 0 };
    let mut n4_hi = if d >= 4 { pairs / 6 } else { 0 };
    if let Some(c) = caps {
        n4_hi = n4_hi.min(c.n4_max);
    }
    let mut rows = Vec::new();
    for n4 in n4_lo..=n4_hi {
        let rest = pairs - 6 * n4;
        let mut n3_hi = if d >= 3 { rest / 3 } else { 0 };
        if let Some(c) = caps {
            n3_hi = n3_hi.min(c.n3_max);
        }
        // n2 + n3 = rest - 2 n3 <= cap
        let n3_lo = if free {
            ceil_div(rest as i64 - free_pair_cap(d), 2).max(0) as u64
        } else {
            0
        };
        for n3 in n3_lo..=n3_hi {
            let n2 = rest - 3 * n3;
            rows.extend(admit(config, d, n2, n3, n4));
        }
    }
    rows
}

/// All non-pencil consistent `(d; n2, n3, n4)` with `d` in `d_min..=d_max`
/// passing every active filter.
pub fn enumerate(d_min: u32, d_max: u32, config: &FilterConfig) -> Result<EnumerationResult> {
    check_range(d_min, d_max)?;
    config.validate()?;
    #[cfg(feature = "parallel")]
    let per_degree: Vec<Vec<EnumerationRow>> = {
        use rayon::prelude::*;
        (d_min..=d_max)
            .into_par_iter()
            .map(|d| enumerate_degree(d, config))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_degree: Vec<Vec<EnumerationRow>> =
        (d_min..=d_max).map(|d| enumerate_degree(d, config)).collect();
    let mut rows: Vec<EnumerationRow> = per_degree.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.wc.cmp(&b.wc));
    Ok(EnumerationResult {
        d_min,
        d_max,
        config: config.clone(),
        rows,
    })
}

/// [`enumerate`] restricted to M-arrangements satisfying the M-bounds.
pub fn m_list(d_min: u32, d_max: u32, config: &FilterConfig) -> Result<EnumerationResult> {
    let config = config
        .clone()
        .with_filter(Filter::MArrangement)
        .with_filter(Filter::MBounds);
    enumerate(d_min.max(4), d_max, &config)
}
