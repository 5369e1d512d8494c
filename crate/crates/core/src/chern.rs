//! Chern numbers of the log surface attached to an arrangement (blow-up of
//! the points of multiplicity >= 3, complement of the reduced total
//! transform), and the ratio bounds for M-arrangements.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{is_m_arrangement, FilterId, FilterVerdict, WeakCombinatorics};
use crate::error::{Error, Result};
use crate::exact::rational_str;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernPair {
    pub c1sq: i64,
    pub c2: i64,
    #[serde(with = "rational_str::option", default)]
    pub ratio: Option<Rational64>,
}

/// `c1^2 = 9 - 5d + sum (3k-4) n_k`, `c2 = 3 - 2d + sum (k-1) n_k`;
/// defined for `d >= 6` with no point through all lines.
pub fn chern_numbers(wc: &WeakCombinatorics) -> Result<ChernPair> {
    let d = wc.d() as i64;
    if d < 6 || wc.n(wc.d()) > 0 {
        return Err(Error::InvalidArgument(format!(
            "log Chern numbers need d >= 6 and n_d = 0, got {wc}"
        )));
    }
    let (mut c1sq, mut c2) = (9 - 5 * d, 3 - 2 * d);
    for (&k, &n) in wc.counts() {
        let (k, n) = (k as i64, n as i64);
        c1sq += (3 * k - 4) * n;
        c2 += (k - 1) * n;
    }
    Ok(ChernPair {
        c1sq,
        c2,
        ratio: (c2 != 0).then(|| Rational64::new(c1sq, c2)),
    })
}

/// The degree-specific bound on `c1^2/c2` for M-arrangements:
/// `(8m^2-17m+6) / (3m(m-2))` for `d = 2m+1 >= 9`,
/// `(8m^2-25m+9) / (3m(m-3))` for `d = 2m >= 10`.
pub fn m_ratio_bound(d: u32) -> Result<Rational64> {
    let m = (d / 2) as i64;
    match d % 2 {
        1 if d >= 9 => Ok(Rational64::new(8 * m * m - 17 * m + 6, 3 * m * (m - 2))),
        0 if d >= 10 => Ok(Rational64::new(8 * m * m - 25 * m + 9, 3 * m * (m - 3))),
        _ => Err(Error::InvalidArgument(format!(
            "ratio bound needs odd d >= 9 or even d >= 10, got {d}"
        ))),
    }
}

/// `11/4` for odd degrees, `14/5` for even ones.
pub fn m_ratio_ceiling(d: u32) -> Rational64 {
    if d % 2 == 1 {
        Rational64::new(11, 4)
    } else {
        Rational64::new(14, 5)
    }
}

/// The value `c2` takes on every M-arrangement of degree `d`.
pub fn m_expected_c2(d: u32) -> i64 {
    let m = (d / 2) as i64;
    if d % 2 == 1 {
        m * m - 2 * m
    } else {
        m * m - 3 * m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MChernReport {
    pub chern: ChernPair,
    pub expected_c2: i64,
    pub c2_matches: bool,
    #[serde(with = "rational_str")]
    pub bound: Rational64,
    /// `bound - ratio`.
    pub ratio_bound: FilterVerdict,
    /// `11/4 - bound` (odd) or `14/5 - bound` (even).
    #[serde(with = "rational_str")]
    pub ceiling_slack: Rational64,
}

pub fn m_chern_invariant_check(wc: &WeakCombinatorics) -> Result<MChernReport> {
    if !is_m_arrangement(wc)? {
        return Err(Error::InvalidArgument(format!("{wc} is not an M-arrangement")));
    }
    let d = wc.d();
    let bound = m_ratio_bound(d)?;
    let chern = chern_numbers(wc)?;
    let ratio = chern
        .ratio
        .ok_or_else(|| Error::InvalidArgument("c2 vanishes".into()))?;
    let expected_c2 = m_expected_c2(d);
    Ok(MChernReport {
        c2_matches: chern.c2 == expected_c2,
        expected_c2,
        ratio_bound: FilterVerdict::from_slack(FilterId::MRatioBound, bound - ratio),
        ceiling_slack: m_ratio_ceiling(d) - bound,
        bound,
        chern,
    })
}

/// `3 - ratio` and `8/3 - ratio`, when `c2 > 0`.
pub fn ratio_checks(pair: &ChernPair) -> (FilterVerdict, FilterVerdict) {
    match pair.ratio {
        Some(r) if pair.c2 > 0 => (
            FilterVerdict::from_slack(FilterId::LogMiyaokaSakai, Rational64::from_integer(3) - r),
            FilterVerdict::from_slack(FilterId::EightThirds, Rational64::new(8, 3) - r),
        ),
        _ => (
            FilterVerdict::not_applicable(FilterId::LogMiyaokaSakai),
            FilterVerdict::not_applicable(FilterId::EightThirds),
        ),
    }
}
