//! Filter pipelines for the enumerator.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    free_bounds, is_m_arrangement, m_bounds, melchior, script_cond4, shnurnikov, FilterVerdict,
    ShnurnikovConstant, WeakCombinatorics,
};
use crate::error::{Error, Result};
use crate::freeness::{freeness_compatible, FreenessReport, FreenessVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    /// `n2 + n3 <= floor((3d-3)/2)` and `n4 >= ceil((d^2-10d+9)/12)`.
    FreeBounds,
    Melchior,
    /// Pseudoline bound with the configured constant and its hypotheses.
    Shnurnikov,
    /// The script's unconditional `8 + n4/2 <= n2 + 3 n3/2`.
    ScriptCond4,
    /// Integer exponents solving the freeness quadratic.
    FreenessIntegrality,
    MArrangement,
    MBounds,
}

/// Per-variable bounds from the original enumeration script (`range(1, 26)`
/// for `n2`, `range(0, 26)` for `n3, n4`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCaps {
    pub n2_min: u64,
    pub n2_max: u64,
    pub n3_max: u64,
    pub n4_max: u64,
}

impl SearchCaps {
    pub fn script() -> Self {
        Self {
            n2_min: 1,
            n2_max: 25,
            n3_max: 25,
            n4_max: 25,
        }
    }

    pub fn admits(&self, n2: u64, n3: u64, n4: u64) -> bool {
        (self.n2_min..=self.n2_max).contains(&n2) && n3 <= self.n3_max && n4 <= self.n4_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    PaperTable,
    ScriptCompat,
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub filters: Vec<Filter>,
    pub shnurnikov_constant: ShnurnikovConstant,
    pub search_caps: Option<SearchCaps>,
    pub include_freeness_integrality: bool,
    pub include_shnurnikov: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self::paper_table()
    }
}

impl FilterConfig {
    /// Naive count, freeness bounds and Melchior; no caps.
    pub fn paper_table() -> Self {
        Self {
            filters: vec![Filter::FreeBounds, Filter::Melchior],
            shnurnikov_constant: ShnurnikovConstant::Strict9,
            search_caps: None,
            include_freeness_integrality: false,
            include_shnurnikov: false,
        }
    }

    /// The original script: caps at 25, `n2 >= 1`, and optionally its cond4.
    pub fn script_compat(cond4: bool) -> Self {
        let mut filters = vec![Filter::FreeBounds, Filter::Melchior];
        if cond4 {
            filters.push(Filter::ScriptCond4);
        }
        Self {
            filters,
            shnurnikov_constant: ShnurnikovConstant::Script8,
            search_caps: Some(SearchCaps::script()),
            include_freeness_integrality: false,
            include_shnurnikov: false,
        }
    }

    /// Paper-table mode plus strict Shnurnikov and integer exponents.
    pub fn strict() -> Self {
        Self {
            include_freeness_integrality: true,
            include_shnurnikov: true,
            ..Self::paper_table()
        }
    }

    pub fn for_mode(mode: Mode, cond4: bool) -> Self {
        match mode {
            Mode::PaperTable => Self::paper_table(),
            Mode::ScriptCompat => Self::script_compat(cond4),
            Mode::Strict => Self::strict(),
        }
    }

    pub fn with_filter(mut self, f: Filter) -> Self {
        if !self.filters.contains(&f) {
            self.filters.push(f);
        }
        self
    }

    /// Enabled filters in evaluation order, including those switched on by flags.
    pub fn active_filters(&self) -> Vec<Filter> {
        let mut out: Vec<Filter> = Vec::new();
        let flagged = [
            (self.include_shnurnikov, Filter::Shnurnikov),
            (self.include_freeness_integrality, Filter::FreenessIntegrality),
        ];
        for f in self
            .filters
            .iter()
            .copied()
            .chain(flagged.into_iter().filter(|(on, _)| *on).map(|(_, f)| f))
        {
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(c) = &self.search_caps {
            if c.n2_max == 0 || c.n3_max == 0 || c.n4_max == 0 || c.n2_min > c.n2_max {
                return Err(Error::InvalidArgument("search caps must be positive".into()));
            }
        }
        Ok(())
    }

    /// Evaluates every active filter on a consistent, quadruple-bounded `wc`.
    pub fn evaluate(&self, wc: &WeakCombinatorics) -> Evaluation {
        let mut eval = Evaluation {
            verdicts: Vec::new(),
            freeness: None,
            m_arrangement: None,
            passes: true,
        };
        for f in self.active_filters() {
            match f {
                Filter::FreeBounds => match free_bounds(wc) {
                    Ok((a, b)) => {
                        eval.push(a).push(b);
                    }
                    Err(_) => {
                        eval.reject();
                    }
                },
                Filter::Melchior => {
                    eval.push(melchior(wc));
                }
                Filter::Shnurnikov => {
                    eval.push(shnurnikov(wc, self.shnurnikov_constant));
                }
                Filter::ScriptCond4 => {
                    eval.push(script_cond4(wc));
                }
                Filter::FreenessIntegrality => {
                    let report = freeness_compatible(wc).ok();
                    let ok = report
                        .as_ref()
                        .is_some_and(|r| r.verdict != FreenessVerdict::NotCompatible);
                    eval.freeness = report;
                    if !ok {
                        eval.reject();
                    }
                }
                Filter::MArrangement => {
                    let m = is_m_arrangement(wc).unwrap_or(false);
                    eval.m_arrangement = Some(m);
                    if !m {
                        eval.reject();
                    }
                }
                Filter::MBounds => {
                    let (a, b) = m_bounds(wc);
                    eval.push(a).push(b);
                }
            }
        }
        eval
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub verdicts: Vec<FilterVerdict>,
    pub freeness: Option<FreenessReport>,
    pub m_arrangement: Option<bool>,
    pub passes: bool,
}

impl Evaluation {
    fn push(&mut self, v: FilterVerdict) -> &mut Self {
        if v.fails() {
            self.passes = false;
        }
        self.verdicts.push(v);
        self
    }

    fn reject(&mut self) -> &mut Self {
        self.passes = false;
        self
    }
}
