//! Browser bindings: classify a weak combinatorics, enumerate a degree range,
//! and search for a wiring diagram drawn as SVG.
//!
//! Each export is a thin wrapper over a plain function returning
//! `Result<String, String>`, so the logic is testable off the browser.

use std::fmt::Write;

use wasm_bindgen::prelude::*;

use arrangements::config::{FilterConfig, Mode};
use arrangements::enumeration::{enumerate, MAX_DEGREE};
use arrangements::realizability::{wiring_search, SearchLimits, Witness, WiringDiagram};
use arrangements::report::classify;
use arrangements::WeakCombinatorics;

/// Wiring searches in the page are capped by nodes; wasm has no clock.
pub const MAX_BROWSER_NODES: u64 = 50_000_000;

fn parse_wc(text: &str) -> Result<WeakCombinatorics, String> {
    text.parse().map_err(|e: arrangements::Error| e.to_string())
}

pub fn classify_json(wc: &str) -> Result<String, String> {
    let report = classify(&parse_wc(wc)?);
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

pub fn enumeration_json(d_min: u32, d_max: u32, mode: &str, cond4: bool) -> Result<String, String> {
    let mode = match mode {
        "paper-table" => Mode::PaperTable,
        "script-compat" => Mode::ScriptCompat,
        "strict" => Mode::Strict,
        other => return Err(format!("unknown mode {other:?}")),
    };
    if d_max > MAX_DEGREE {
        return Err(format!("degrees above {MAX_DEGREE} are not enumerated"));
    }
    let result = enumerate(d_min, d_max, &FilterConfig::for_mode(mode, cond4)).map_err(|e| e.to_string())?;
    serde_json::to_string(&result.rows).map_err(|e| e.to_string())
}

/// `{"status", "nodes", "svg"?}`; `svg` is present only with a witness.
pub fn wiring_json(wc: &str, max_nodes: u64) -> Result<String, String> {
    let wc = parse_wc(wc)?;
    let limits = SearchLimits {
        max_nodes: Some(max_nodes.min(MAX_BROWSER_NODES)),
        max_seconds: None,
        ..SearchLimits::default()
    };
    let outcome = wiring_search(&wc, limits).map_err(|e| e.to_string())?;
    let svg = match &outcome.witness {
        Some(Witness::Wiring(d)) => Some(wiring_svg(d)),
        _ => None,
    };
    let value = serde_json::json!({
        "status": outcome.status,
        "nodes": outcome.statistics.nodes,
        "svg": svg,
    });
    Ok(value.to_string())
}

const STEP: f64 = 36.0;
const GAP: f64 = 28.0;
const MARGIN: f64 = 28.0;

fn point_colour(k: u32) -> &'static str {
    match k {
        2 => "#888",
        3 => "#1f77b4",
        _ => "#d62728",
    }
}

/// Wires run left to right; event `t` sits between columns `t` and `t + 1`.
/// Reversing a block maps position `p + j` to `p + k - 1 - j`, so every wire
/// of the block passes through the same midpoint, which is drawn as a dot.
pub fn wiring_svg(diagram: &WiringDiagram) -> String {
    let d = diagram.wires as usize;
    let x = |t: usize| MARGIN + STEP * t as f64;
    let y = |p: usize| MARGIN + GAP * p as f64;
    let width = x(diagram.events.len()) + MARGIN;
    let height = y(d.saturating_sub(1)) + MARGIN;

    let mut at: Vec<usize> = (0..d).collect(); // wire -> position
    let mut paths: Vec<String> = (0..d).map(|w| format!("M{:.1},{:.1}", x(0), y(w))).collect();
    let mut dots = String::new();
    for (t, &(pos, size)) in diagram.events.iter().enumerate() {
        let (p, k) = (pos as usize, size as usize);
        for w in 0..d {
            if (p..p + k).contains(&at[w]) {
                at[w] = 2 * p + k - 1 - at[w];
            }
            let _ = write!(paths[w], " L{:.1},{:.1}", x(t + 1), y(at[w]));
        }
        let cy = (y(p) + y(p + k - 1)) / 2.0;
        let _ = write!(
            dots,
            r#"<circle cx="{:.1}" cy="{cy:.1}" r="4" fill="{}"/>"#,
            (x(t) + x(t + 1)) / 2.0,
            point_colour(size)
        );
    }

    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.0} {height:.0}" width="{width:.0}" height="{height:.0}">"#
    );
    for (w, path) in paths.iter().enumerate() {
        let _ = write!(svg, r##"<path d="{path}" fill="none" stroke="#333" stroke-width="1.5"/>"##);
        let _ = write!(svg, r#"<text x="4" y="{:.1}" font-size="10">{}</text>"#, y(w) + 3.0, w + 1);
    }
    svg.push_str(&dots);
    svg.push_str("</svg>");
    svg
}

#[wasm_bindgen]
pub fn classify_wc(wc: &str) -> Result<String, JsError> {
    classify_json(wc).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn enumerate_range(d_min: u32, d_max: u32, mode: &str, cond4: bool) -> Result<String, JsError> {
    enumeration_json(d_min, d_max, mode, cond4).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn search_wiring(wc: &str, max_nodes: f64) -> Result<String, JsError> {
    wiring_json(wc, max_nodes.max(0.0) as u64).map_err(|e| JsError::new(&e))
}
