//! Deterministic CSV, JSON and markdown rendering, and revalidation of JSON
//! documents produced by this crate.

use serde::{Deserialize, Serialize};

use crate::catalog::{catalog, CatalogEntry, CatalogRecord, CATALOG_NAMES};
use crate::chern::{chern_numbers, m_chern_invariant_check, ratio_checks, ChernPair, MChernReport};
use crate::combinatorics::{
    free_bounds, m_bounds, melchior, script_cond4, shnurnikov, FilterId, FilterVerdict,
    ShnurnikovConstant, WeakCombinatorics,
};
use crate::enumeration::EnumerationRow;
use crate::error::{Error, Result};
use crate::freeness::{freeness_compatible, FreenessReport};
use crate::geometry::{
    intersection_summary, simplicial_certificate, IntersectionSummary, RationalArrangement,
    SimplicialVerdict,
};
use crate::realizability::{PackingResult, SearchOutcome, SearchStatus, Witness};
use crate::report::{classify, FilterReport, RealizabilityReport};
use crate::syzygy::{defining_polynomial, is_free_exact, mdr, FreeExactReport, SyzygyLimits};

/// Every non-array JSON document carries a `kind` tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Report(FilterReport),
    Chern {
        weak_combinatorics: WeakCombinatorics,
        chern: ChernPair,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        m_chern: Option<MChernReport>,
    },
    /// Full classification of an explicit arrangement.
    Arrangement {
        /// The arrangement in the text format of [`RationalArrangement`].
        arrangement: String,
        summary: IntersectionSummary,
        simplicial: SimplicialVerdict,
        report: FilterReport,
    },
    Mdr {
        arrangement: String,
        weak_combinatorics: WeakCombinatorics,
        mdr: u32,
    },
    Free {
        arrangement: String,
        summary: IntersectionSummary,
        report: FreeExactReport,
    },
    /// Freeness compatibility from combinatorics alone.
    Freeness {
        weak_combinatorics: WeakCombinatorics,
        report: FreenessReport,
    },
    Record(CatalogRecord),
    CatalogIndex {
        names: Vec<String>,
    },
    Realize {
        weak_combinatorics: WeakCombinatorics,
        #[serde(flatten)]
        report: RealizabilityReport,
    },
    Pack(PackingResult),
    Wiring {
        weak_combinatorics: WeakCombinatorics,
        outcome: SearchOutcome,
    },
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn rows_csv(rows: &[EnumerationRow]) -> String {
    let mut out = String::from("d,n2,n3,n4\n");
    for r in rows {
        let wc = &r.wc;
        out.push_str(&format!("{},{},{},{}\n", wc.d(), wc.n(2), wc.n(3), wc.n(4)));
    }
    out
}

pub fn rows_json(rows: &[EnumerationRow]) -> String {
    to_json(&rows)
}

/// Pipe table with every column padded to its widest cell.
pub fn markdown_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len().max(3)).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    out.push_str(&line(widths.iter().map(|&w| "-".repeat(w)).collect()));
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}

pub fn rows_markdown(rows: &[EnumerationRow]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let wc = &r.wc;
            vec![wc.d().to_string(), wc.n(2).to_string(), wc.n(3).to_string(), wc.n(4).to_string()]
        })
        .collect();
    markdown_table(&["d", "n2", "n3", "n4"], &cells)
}

pub fn verdict_cells(verdicts: &[FilterVerdict]) -> Vec<Vec<String>> {
    verdicts
        .iter()
        .map(|v| {
            let id = serde_json::to_value(v.filter).expect("serializable");
            let status = serde_json::to_value(v.status).expect("serializable");
            vec![
                id.as_str().unwrap_or_default().to_string(),
                status.as_str().unwrap_or_default().to_string(),
                v.slack.map_or_else(String::new, |s| s.to_string()),
            ]
        })
        .collect()
}

pub fn verdicts_markdown(verdicts: &[FilterVerdict]) -> String {
    markdown_table(&["filter", "status", "slack"], &verdict_cells(verdicts))
}

/// Recomputes a stored verdict from its filter id.
pub fn recompute_verdict(filter: FilterId, wc: &WeakCombinatorics) -> Option<FilterVerdict> {
    let pick = |(a, b): (FilterVerdict, FilterVerdict)| {
        [a, b].into_iter().find(|v| v.filter == filter)
    };
    match filter {
        FilterId::FreePairCap | FilterId::FreeQuadrupleFloor => free_bounds(wc).ok().and_then(pick),
        FilterId::Melchior => Some(melchior(wc)),
        FilterId::ShnurnikovStrict9 => Some(shnurnikov(wc, ShnurnikovConstant::Strict9)),
        FilterId::ShnurnikovScript8 => Some(shnurnikov(wc, ShnurnikovConstant::Script8)),
        FilterId::ScriptCond4 => Some(script_cond4(wc)),
        FilterId::MPairCap | FilterId::MQuadrupleFloor => pick(m_bounds(wc)),
        FilterId::LogMiyaokaSakai | FilterId::EightThirds => {
            chern_numbers(wc).ok().and_then(|c| pick(ratio_checks(&c)))
        }
        FilterId::MRatioBound => m_chern_invariant_check(wc).ok().map(|r| r.ratio_bound),
    }
}

fn parse_arrangement(text: &str) -> Result<RationalArrangement> {
    text.parse()
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn check_verdicts(wc: &WeakCombinatorics, verdicts: &[FilterVerdict]) -> Result<()> {
    for v in verdicts {
        let fresh = recompute_verdict(v.filter, wc)
            .ok_or_else(|| invalid(format!("{wc}: verdict {:?} cannot be recomputed", v.filter)))?;
        if &fresh != v {
            return Err(invalid(format!("{wc}: stored {v:?}, recomputed {fresh:?}")));
        }
    }
    Ok(())
}

fn check_outcome(wc: &WeakCombinatorics, outcome: &SearchOutcome) -> Result<()> {
    match (&outcome.status, &outcome.witness) {
        (SearchStatus::WitnessFound, Some(w)) => {
            let res = match w {
                Witness::Packing(p) => p.validate_for(wc),
                Witness::Wiring(g) => g.validate_for(wc),
            };
            res.map_err(|e| invalid(format!("{wc}: witness rejected: {e}")))
        }
        (SearchStatus::WitnessFound, None) => Err(invalid("witness-found without a witness")),
        (_, Some(_)) => Err(invalid("witness present without witness-found status")),
        _ => Ok(()),
    }
}

/// Re-parses a JSON document and checks every claim that can be checked
/// without rerunning a search. Returns a one-line summary.
pub fn verify_json(text: &str) -> Result<String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| invalid(format!("not JSON: {e}")))?;
    let parse_err = |e: serde_json::Error| invalid(format!("unrecognized document: {e}"));
    if value.is_array() {
        let rows: Vec<EnumerationRow> = serde_json::from_value(value).map_err(parse_err)?;
        for r in &rows {
            r.wc.require_consistent()?;
            if r.wc.is_pencil() {
                return Err(invalid(format!("{}: pencil in enumeration output", r.wc)));
            }
            if let Some(v) = r.verdicts.iter().find(|v| v.fails()) {
                return Err(invalid(format!("{}: row fails {:?}", r.wc, v.filter)));
            }
            check_verdicts(&r.wc, &r.verdicts)?;
        }
        return Ok(format!("ok: {} enumeration rows", rows.len()));
    }
    let doc: Document = serde_json::from_value(value).map_err(parse_err)?;
    match &doc {
        Document::Report(r) => {
            let mut fresh = classify(&r.weak_combinatorics);
            fresh.realizability = r.realizability.clone();
            if &fresh != r {
                return Err(invalid(format!("{}: report differs from recomputation", r.weak_combinatorics)));
            }
            if let Some(real) = &r.realizability {
                check_outcome(&r.weak_combinatorics, &real.packing)?;
                if let Some(w) = &real.wiring {
                    check_outcome(&r.weak_combinatorics, w)?;
                }
            }
            Ok(format!("ok: report for {}", r.weak_combinatorics))
        }
        Document::Chern {
            weak_combinatorics,
            chern,
            m_chern,
        } => {
            if &chern_numbers(weak_combinatorics)? != chern {
                return Err(invalid("Chern numbers differ from recomputation"));
            }
            if m_chern.as_ref() != m_chern_invariant_check(weak_combinatorics).ok().as_ref() {
                return Err(invalid("M-arrangement Chern check differs from recomputation"));
            }
            Ok(format!("ok: Chern numbers for {weak_combinatorics}"))
        }
        Document::Arrangement {
            arrangement,
            summary,
            simplicial,
            report,
        } => {
            let arr = parse_arrangement(arrangement)?;
            let fresh_summary = intersection_summary(&arr);
            if &fresh_summary != summary
                || &simplicial_certificate(&arr) != simplicial
                || &classify(&fresh_summary.weak_combinatorics) != report
            {
                return Err(invalid("arrangement report differs from recomputation"));
            }
            Ok(format!("ok: arrangement report for {}", summary.weak_combinatorics))
        }
        Document::Mdr {
            arrangement,
            weak_combinatorics,
            mdr: stored,
        } => {
            let arr = parse_arrangement(arrangement)?;
            if &intersection_summary(&arr).weak_combinatorics != weak_combinatorics {
                return Err(invalid("weak combinatorics differ from the arrangement"));
            }
            let fresh = mdr(&defining_polynomial(&arr), SyzygyLimits::default())?;
            if fresh != *stored {
                return Err(invalid(format!("stored mdr {stored}, recomputed {fresh}")));
            }
            Ok(format!("ok: mdr {stored} for {weak_combinatorics}"))
        }
        Document::Free {
            arrangement,
            summary,
            report,
        } => {
            let arr = parse_arrangement(arrangement)?;
            if &intersection_summary(&arr) != summary {
                return Err(invalid("intersection summary differs from recomputation"));
            }
            if &is_free_exact(&arr, SyzygyLimits::default())? != report {
                return Err(invalid("freeness report differs from recomputation"));
            }
            Ok(format!("ok: freeness report for {}", summary.weak_combinatorics))
        }
        Document::Freeness {
            weak_combinatorics,
            report,
        } => {
            if &freeness_compatible(weak_combinatorics)? != report {
                return Err(invalid("freeness report differs from recomputation"));
            }
            Ok(format!("ok: freeness compatibility for {weak_combinatorics}"))
        }
        Document::Record(record) => match catalog(&record.name)? {
            CatalogEntry::Record(fresh) if &fresh == record => Ok(format!("ok: catalog record {}", record.name)),
            _ => Err(invalid(format!("catalog record {} differs from the bundled one", record.name))),
        },
        Document::CatalogIndex { names } => {
            if names.iter().map(String::as_str).ne(CATALOG_NAMES.iter().copied()) {
                return Err(invalid("catalog index differs from the bundled names"));
            }
            Ok(format!("ok: catalog index with {} names", names.len()))
        }
        Document::Realize {
            weak_combinatorics,
            report,
        } => {
            check_outcome(weak_combinatorics, &report.packing)?;
            if let Some(w) = &report.wiring {
                check_outcome(weak_combinatorics, w)?;
            }
            Ok(format!("ok: realizability for {weak_combinatorics}"))
        }
        Document::Pack(p) => {
            p.witness.validate().map_err(invalid)?;
            let k = p.block_size as usize;
            if p.witness.ground_size != p.ground_size
                || p.witness.blocks.len() as u64 != p.max
                || p.witness.blocks.iter().any(|b| b.len() != k)
            {
                return Err(invalid("packing witness does not match the stated maximum"));
            }
            Ok(format!("ok: packing of {} {}-blocks on {} points", p.max, p.block_size, p.ground_size))
        }
        Document::Wiring {
            weak_combinatorics,
            outcome,
        } => {
            check_outcome(weak_combinatorics, outcome)?;
            Ok(format!("ok: wiring outcome for {weak_combinatorics}"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::FilterConfig;
    use crate::enumeration::enumerate;

    #[test]
    fn csv_and_markdown() {
        let r = enumerate(5, 5, &FilterConfig::paper_table()).unwrap();
        assert_eq!(rows_csv(&r.rows), "d,n2,n3,n4\n5,4,0,1\n5,4,2,0\n");
        let md = rows_markdown(&r.rows);
        assert!(md.starts_with("| d   | n2  | n3  | n4  |\n| --- |"));
    }

    #[test]
    fn enumeration_json_verifies() {
        let r = enumerate(3, 9, &FilterConfig::strict()).unwrap();
        let text = rows_json(&r.rows);
        assert!(verify_json(&text).unwrap().contains("enumeration rows"));
        let tampered = text.replacen("\"n2\": 4", "\"n2\": 5", 1);
        assert!(verify_json(&tampered).is_err());
    }

    #[test]
    fn report_round_trip() {
        let wc: WeakCombinatorics = "13,12,4,9".parse().unwrap();
        let text = to_json(&Document::Report(classify(&wc)));
        let back: Document = serde_json::from_str(&text).unwrap();
        assert_eq!(back, Document::Report(classify(&wc)));
        verify_json(&text).unwrap();
    }
}
