//! One-stop classification of a weak combinatorics.

use serde::{Deserialize, Serialize};

use crate::catalog::catalog_records;
use crate::chern::{chern_numbers, m_chern_invariant_check, ratio_checks, ChernPair, MChernReport};
use crate::combinatorics::{
    free_bounds, is_m_arrangement, m_bounds, melchior, script_cond4, shnurnikov, FilterVerdict,
    ShnurnikovConstant, Status, WeakCombinatorics,
};
use crate::config::SearchCaps;
use crate::error::Result;
use crate::freeness::{freeness_compatible, FreenessReport};
use crate::geometry::FieldTag;
use crate::realizability::{
    partial_linear_space_exists, wiring::MAX_WIRES, wiring_search, SearchLimits, SearchOutcome,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "flag", rename_all = "kebab-case")]
pub enum Flag {
    /// Melchior holds with equality: a real realization must be simplicial.
    SimplicialRequired,
    TrivialPencil,
    /// Strict Shnurnikov fails, so no pseudoline (hence no real) realization.
    ShnurnikovObstruction,
    /// Realizability hinges on matroid representability, decided elsewhere.
    OutOfScopeExternalDatabase { reason: String },
    KnownRealization { name: String, field: FieldTag },
    /// Some count exceeds the enumeration script's loop bound of 25.
    BeyondScriptCaps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizabilityReport {
    pub packing: SearchOutcome,
    /// Absent when the wire count is outside the supported range.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wiring: Option<SearchOutcome>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    pub weak_combinatorics: WeakCombinatorics,
    pub consistent: bool,
    pub quadruple_bounded: bool,
    pub tau: u64,
    pub verdicts: Vec<FilterVerdict>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub freeness: Option<FreenessReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m_arrangement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chern: Option<ChernPair>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m_chern: Option<MChernReport>,
    pub flags: Vec<Flag>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub realizability: Option<RealizabilityReport>,
}

impl FilterReport {
    pub fn verdict(&self, filter: crate::combinatorics::FilterId) -> Option<&FilterVerdict> {
        self.verdicts.iter().find(|v| v.filter == filter)
    }

    pub fn has_flag(&self, pred: impl Fn(&Flag) -> bool) -> bool {
        self.flags.iter().any(pred)
    }

    /// Inconsistent input, or some verdict fails. The script's cond4 is
    /// ignored: it drops the applicability condition and rejects realizable
    /// near-pencils.
    pub fn any_failure(&self) -> bool {
        !self.consistent
            || self
                .verdicts
                .iter()
                .any(|v| v.filter != crate::combinatorics::FilterId::ScriptCond4 && v.fails())
    }
}

const EXTERNAL: [((u32, u64, u64, u64), &str); 2] = [
    (
        (13, 15, 1, 10),
        "no matroid with this weak combinatorics in the rank-3 matroid database",
    ),
    (
        (11, 10, 3, 6),
        "the only matroids are representable over C (t^2+t+1=0) but not over R",
    ),
];

fn is_near_pencil(wc: &WeakCombinatorics) -> bool {
    let d = wc.d();
    d >= 4 && wc.counts().len() == 2 && wc.n(2) == (d - 1) as u64 && wc.n(d - 1) == 1
}

/// Verdicts for every filter plus freeness, M and Chern data and flags.
pub fn classify(wc: &WeakCombinatorics) -> FilterReport {
    let consistent = wc.is_consistent();
    let quadruple_bounded = wc.is_quadruple_bounded();
    let pencil = wc.is_pencil();
    let mut verdicts = Vec::new();
    if let Ok((cap, floor)) = free_bounds(wc) {
        verdicts.extend([cap, floor]);
    }
    let mel = melchior(wc);
    verdicts.push(mel.clone());
    let strict = shnurnikov(wc, ShnurnikovConstant::Strict9);
    verdicts.push(strict.clone());
    verdicts.push(shnurnikov(wc, ShnurnikovConstant::Script8));
    if quadruple_bounded {
        verdicts.push(script_cond4(wc));
    }
    let freeness = freeness_compatible(wc).ok();
    let m_arrangement = is_m_arrangement(wc).ok();
    if m_arrangement == Some(true) {
        let (a, b) = m_bounds(wc);
        verdicts.extend([a, b]);
    }
    let chern = consistent.then(|| chern_numbers(wc).ok()).flatten();
    if let Some(c) = &chern {
        let (ms, eight) = ratio_checks(c);
        verdicts.extend([ms, eight]);
    }
    let m_chern = m_chern_invariant_check(wc).ok();

    let mut flags = Vec::new();
    if pencil {
        flags.push(Flag::TrivialPencil);
    }
    if mel.status == Status::Pass && mel.slack == Some(0.into()) {
        flags.push(Flag::SimplicialRequired);
    }
    if strict.fails() {
        flags.push(Flag::ShnurnikovObstruction);
    }
    let key = (wc.d(), wc.n(2), wc.n(3), wc.n(4));
    for (t, reason) in EXTERNAL {
        if quadruple_bounded && key == t {
            flags.push(Flag::OutOfScopeExternalDatabase {
                reason: reason.to_string(),
            });
        }
    }
    if is_near_pencil(wc) || (wc.d() == 3 && key == (3, 3, 0, 0)) {
        flags.push(Flag::KnownRealization {
            name: format!("near-pencil({})", wc.d()),
            field: FieldTag::Real,
        });
    }
    if wc.d() > 3 && wc.counts().len() == 1 && wc.n(2) == wc.line_pairs() {
        flags.push(Flag::KnownRealization {
            name: format!("generic({})", wc.d()),
            field: FieldTag::Real,
        });
    }
    for r in catalog_records() {
        if &r.weak_combinatorics == wc {
            flags.push(Flag::KnownRealization {
                name: r.name,
                field: r.field,
            });
        }
    }
    let caps = SearchCaps::script();
    if wc.n(2) > caps.n2_max || wc.n(3) > caps.n3_max || wc.n(4) > caps.n4_max {
        flags.push(Flag::BeyondScriptCaps);
    }

    FilterReport {
        weak_combinatorics: wc.clone(),
        consistent,
        quadruple_bounded,
        tau: wc.total_tjurina(),
        verdicts,
        freeness,
        m_arrangement,
        chern,
        m_chern,
        flags,
        realizability: None,
    }
}

/// Runs the packing search and, when `3 <= d <= 16`, the wiring search.
pub fn realize(wc: &WeakCombinatorics, limits: SearchLimits) -> Result<RealizabilityReport> {
    let packing = partial_linear_space_exists(wc, limits)?;
    let wiring = if (3..=MAX_WIRES).contains(&wc.d()) {
        Some(wiring_search(wc, limits)?)
    } else {
        None
    };
    Ok(RealizabilityReport { packing, wiring })
}
