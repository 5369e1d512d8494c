//! Weak combinatorics `(d; n2, n3, ...)` and the closed-form inequalities
//! evaluated on them.
//!
//! Every comparison is carried out in integers after clearing denominators;
//! slacks are reported as exact rationals (`LHS - RHS`, oriented so that a
//! passing filter has non-negative slack).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binom2, ceil_div, floor_div, rational_str};

/// The vector `(d; n_2, ..., n_t)` counting `k`-fold intersection points of
/// an arrangement of `d` lines.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakCombinatorics {
    d: u32,
    counts: BTreeMap<u32, u64>,
}

impl WeakCombinatorics {
    /// Builds from `(k, n_k)` pairs. Zero counts are dropped.
    pub fn new(d: u32, counts: impl IntoIterator<Item = (u32, u64)>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidCombinatorics("d must be at least 1".into()));
        }
        let mut map = BTreeMap::new();
        for (k, n) in counts {
            if n == 0 {
                continue;
            }
            if k < 2 {
                return Err(Error::InvalidCombinatorics(format!(
                    "multiplicity {k} is below 2"
                )));
            }
            if k > d {
                return Err(Error::InvalidCombinatorics(format!(
                    "multiplicity {k} exceeds the number of lines {d}"
                )));
            }
            *map.entry(k).or_insert(0) += n;
        }
        Ok(Self { d, counts: map })
    }

    /// `(d; n2, n3, n4)`.
    pub fn quad(d: u32, n2: u64, n3: u64, n4: u64) -> Result<Self> {
        Self::new(d, [(2, n2), (3, n3), (4, n4)])
    }

    pub fn pencil(d: u32) -> Result<Self> {
        Self::new(d, [(d, 1)])
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `n_k`, zero when absent.
    pub fn n(&self, k: u32) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_quadruple_bounded(&self) -> bool {
        self.max_multiplicity() <= 4
    }

    /// `C(d, 2)`.
    pub fn line_pairs(&self) -> u64 {
        binom2(self.d as i64) as u64
    }

    /// `sum_k C(k,2) n_k`.
    pub fn point_pairs(&self) -> u64 {
        self.counts
            .iter()
            .map(|(&k, &n)| binom2(k as i64) as u64 * n)
            .sum()
    }

    /// The naive combinatorial count `sum_k C(k,2) n_k = C(d,2)`.
    pub fn is_consistent(&self) -> bool {
        self.point_pairs() == self.line_pairs()
    }

    pub fn is_pencil(&self) -> bool {
        if self.d == 1 {
            return self.counts.is_empty();
        }
        self.counts.len() == 1 && self.n(self.d) == 1
    }

    /// `tau = sum_k (k-1)^2 n_k`.
    pub fn total_tjurina(&self) -> u64 {
        self.counts
            .iter()
            .map(|(&k, &n)| ((k - 1) as u64).pow(2) * n)
            .sum()
    }

    pub fn require_consistent(&self) -> Result<()> {
        if self.is_consistent() {
            Ok(())
        } else {
            Err(Error::Inconsistent {
                wc: self.to_string(),
                pairs: self.point_pairs(),
                expected: self.line_pairs(),
            })
        }
    }

    pub fn require_quadruple_bounded(&self) -> Result<()> {
        if self.is_quadruple_bounded() {
            Ok(())
        } else {
            Err(Error::NotQuadrupleBounded {
                wc: self.to_string(),
                max: self.max_multiplicity(),
            })
        }
    }

    fn sort_key(&self) -> (u32, Vec<u64>) {
        let top = self.max_multiplicity().max(4);
        (self.d, (2..=top).map(|k| self.n(k)).collect())
    }
}

impl Ord for WeakCombinatorics {
    fn cmp(&self, other: &Self) -> Ordering {
        let (d1, a) = self.sort_key();
        let (d2, b) = other.sort_key();
        d1.cmp(&d2).then_with(|| {
            let len = a.len().max(b.len());
            let pad = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
            (0..len)
                .map(|i| pad(&a, i).cmp(&pad(&b, i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for WeakCombinatorics {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeakCombinatorics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.max_multiplicity().max(4);
        let parts: Vec<String> = (2..=top).map(|k| self.n(k).to_string()).collect();
        write!(f, "({};{})", self.d, parts.join(","))
    }
}

/// Accepts `d,n2,n3,n4[,n5...]` and the display form `(d;n2,n3,n4)`.
impl FromStr for WeakCombinatorics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .replace(';', ",");
        let values = cleaned
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidCombinatorics(format!("`{s}`: {e}")))?;
        let (&d, rest) = values
            .split_first()
            .ok_or_else(|| Error::InvalidCombinatorics(format!("`{s}` is empty")))?;
        let d = u32::try_from(d).map_err(|_| Error::InvalidCombinatorics("d too large".into()))?;
        Self::new(d, rest.iter().enumerate().map(|(i, &n)| (i as u32 + 2, n)))
    }
}

impl Serialize for WeakCombinatorics {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let top = self.max_multiplicity().max(4);
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("d", &self.d)?;
        for k in 2..=top {
            let n = self.n(k);
            if k <= 4 || n > 0 {
                map.serialize_entry(&format!("n{k}"), &n)?;
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for WeakCombinatorics {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, u64>::deserialize(de)?;
        let d = raw.get("d").copied().ok_or_else(|| D::Error::missing_field("d"))?;
        let mut counts = Vec::new();
        for (key, &n) in &raw {
            if key == "d" {
                continue;
            }
            let k = key
                .strip_prefix('n')
                .and_then(|k| k.parse::<u32>().ok())
                .ok_or_else(|| D::Error::custom(format!("unexpected key `{key}`")))?;
            counts.push((k, n));
        }
        let d = u32::try_from(d).map_err(D::Error::custom)?;
        WeakCombinatorics::new(d, counts).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterId {
    /// `n2 + n3 <= floor((3d-3)/2)`.
    FreePairCap,
    /// `n4 >= ceil((d^2-10d+9)/12)`.
    FreeQuadrupleFloor,
    Melchior,
    ShnurnikovStrict9,
    ShnurnikovScript8,
    /// The enumeration script's raw `8 + k/2 <= i + 3j/2`, no hypotheses.
    ScriptCond4,
    MPairCap,
    MQuadrupleFloor,
    /// `c1^2 / c2 <= 3`.
    LogMiyaokaSakai,
    /// `c1^2 / c2 <= 8/3`.
    EightThirds,
    MRatioBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Exempt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterVerdict {
    pub filter: FilterId,
    pub status: Status,
    #[serde(with = "rational_str::option", default)]
    pub slack: Option<Rational64>,
}

impl FilterVerdict {
    pub fn from_slack(filter: FilterId, slack: Rational64) -> Self {
        let status = if slack >= Rational64::from_integer(0) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            filter,
            status,
            slack: Some(slack),
        }
    }

    pub fn not_applicable(filter: FilterId) -> Self {
        Self {
            filter,
            status: Status::NotApplicable,
            slack: None,
        }
    }

    pub fn exempt(filter: FilterId) -> Self {
        Self {
            filter,
            status: Status::Exempt,
            slack: None,
        }
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn passes(&self) -> bool {
        self.status == Status::Pass
    }
}

fn int(v: i64) -> Rational64 {
    Rational64::from_integer(v)
}

/// Melchior: `n2 >= 3 + sum_{k>=4} (k-3) n_k` for real non-pencil arrangements.
/// Zero slack marks a simplicial candidate.
pub fn melchior(wc: &WeakCombinatorics) -> FilterVerdict {
    if wc.d() < 3 || wc.is_pencil() {
        return FilterVerdict::not_applicable(FilterId::Melchior);
    }
    let excess: i64 = wc
        .counts()
        .iter()
        .filter(|(&k, _)| k >= 4)
        .map(|(&k, &n)| (k as i64 - 3) * n as i64)
        .sum();
    FilterVerdict::from_slack(FilterId::Melchior, int(wc.n(2) as i64 - 3 - excess))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShnurnikovConstant {
    Strict9,
    Script8,
}

impl ShnurnikovConstant {
    pub fn value(self) -> i64 {
        match self {
            ShnurnikovConstant::Strict9 => 9,
            ShnurnikovConstant::Script8 => 8,
        }
    }

    pub fn filter_id(self) -> FilterId {
        match self {
            ShnurnikovConstant::Strict9 => FilterId::ShnurnikovStrict9,
            ShnurnikovConstant::Script8 => FilterId::ShnurnikovScript8,
        }
    }
}

/// The single tuple excluded from the pseudoline bound: `d = 7, n2 = 9, n4 = 2`.
pub fn is_shnurnikov_exempt(wc: &WeakCombinatorics) -> bool {
    wc.d() == 7 && wc.n(2) == 9 && wc.n(4) == 2 && wc.max_multiplicity() <= 4
}

/// `n2 + (3/2) n3 >= C + (1/2) n4`, applicable when `n_d = n_{d-1} = n_{d-2} = 0`.
pub fn shnurnikov(wc: &WeakCombinatorics, constant: ShnurnikovConstant) -> FilterVerdict {
    let id = constant.filter_id();
    let d = wc.d();
    let top_free = (d.saturating_sub(2)..=d).filter(|&k| k >= 2).all(|k| wc.n(k) == 0);
    if !top_free || !wc.is_quadruple_bounded() {
        return FilterVerdict::not_applicable(id);
    }
    if is_shnurnikov_exempt(wc) {
        return FilterVerdict::exempt(id);
    }
    FilterVerdict::from_slack(id, shnurnikov_slack(wc, constant.value()))
}

fn shnurnikov_slack(wc: &WeakCombinatorics, constant: i64) -> Rational64 {
    let lhs2 = 2 * wc.n(2) as i64 + 3 * wc.n(3) as i64;
    let rhs2 = 2 * constant + wc.n(4) as i64;
    Rational64::new(lhs2 - rhs2, 2)
}

/// The enumeration script's `cond4`, applied unconditionally.
pub fn script_cond4(wc: &WeakCombinatorics) -> FilterVerdict {
    FilterVerdict::from_slack(FilterId::ScriptCond4, shnurnikov_slack(wc, 8))
}

/// `floor((3d-3)/2)`: cap on `n2 + n3` for free arrangements.
pub fn free_pair_cap(d: u32) -> i64 {
    floor_div(3 * d as i64 - 3, 2)
}

/// `max(0, ceil((d^2-10d+9)/12))`: floor on `n4` for free arrangements.
pub fn free_quadruple_floor(d: u32) -> i64 {
    let d = d as i64;
    ceil_div(d * d - 10 * d + 9, 12).max(0)
}

/// The two necessary freeness conditions on `(n2+n3, n4)`.
pub fn free_bounds(wc: &WeakCombinatorics) -> Result<(FilterVerdict, FilterVerdict)> {
    wc.require_quadruple_bounded()?;
    let d = wc.d();
    let cap = FilterVerdict::from_slack(
        FilterId::FreePairCap,
        int(free_pair_cap(d) - (wc.n(2) + wc.n(3)) as i64),
    );
    let floor = FilterVerdict::from_slack(
        FilterId::FreeQuadrupleFloor,
        int(wc.n(4) as i64 - free_quadruple_floor(d)),
    );
    Ok((cap, floor))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeBound {
    AtMost(u64),
    Unbounded,
}

/// Largest `d` with `(d-1)/2 >= 2d/m - 2`, i.e. `d (4 - m) <= 3m`.
pub fn dimca_sernesi_max_degree(m: u32) -> Result<DegreeBound> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "maximal multiplicity must be at least 2, got {m}"
        )));
    }
    if m >= 4 {
        return Ok(DegreeBound::Unbounded);
    }
    let m = m as u64;
    Ok(DegreeBound::AtMost(3 * m / (4 - m)))
}

/// Total Tjurina number attained by an M-arrangement of `d` lines:
/// `3m^2 + 1` for `d = 2m+1`, `3m^2 - 3m + 3` for `d = 2m`.
pub fn m_target_tjurina(d: u32) -> Result<u64> {
    if d < 4 {
        return Err(Error::InvalidArgument(format!(
            "M-arrangements need d >= 4, got {d}"
        )));
    }
    let m = (d / 2) as u64;
    Ok(if d % 2 == 1 {
        3 * m * m + 1
    } else {
        3 * m * m - 3 * m + 3
    })
}

pub fn is_m_arrangement(wc: &WeakCombinatorics) -> Result<bool> {
    wc.require_consistent()?;
    wc.require_quadruple_bounded()?;
    Ok(wc.total_tjurina() == m_target_tjurina(wc.d())?)
}

/// Cap on `n2 + n3` and floor on `n4` for M-arrangements, by parity of `d`.
pub fn m_bound_values(d: u32) -> Option<(i64, i64)> {
    let m = (d / 2) as i64;
    if d % 2 == 1 {
        (d >= 5).then(|| (3 * m, ceil_div(3 * m * m - 12 * m + 1, 9).max(0)))
    } else {
        (d >= 6).then(|| (floor_div(6 * m - 3, 2), ceil_div(m * m - 5 * m + 3, 3).max(0)))
    }
}

pub fn m_bounds(wc: &WeakCombinatorics) -> (FilterVerdict, FilterVerdict) {
    let na = || {
        (
            FilterVerdict::not_applicable(FilterId::MPairCap),
            FilterVerdict::not_applicable(FilterId::MQuadrupleFloor),
        )
    };
    if !matches!(is_m_arrangement(wc), Ok(true)) {
        return na();
    }
    let Some((cap, floor)) = m_bound_values(wc.d()) else {
        return na();
    };
    (
        FilterVerdict::from_slack(FilterId::MPairCap, int(cap - (wc.n(2) + wc.n(3)) as i64)),
        FilterVerdict::from_slack(FilterId::MQuadrupleFloor, int(wc.n(4) as i64 - floor)),
    )
}
