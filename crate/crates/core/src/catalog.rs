//! Named arrangements: constructible families with coordinates, and
//! combinatorics-only records for classical arrangements.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::WeakCombinatorics;
use crate::error::{Error, Result};
use crate::geometry::{canonical_int, cross, dot, FieldTag, RationalArrangement, Triple};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub name: String,
    pub weak_combinatorics: WeakCombinatorics,
    pub field: FieldTag,
    /// Whether the arrangement is known to be simplicial.
    pub simplicial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub defining_product: Option<String>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    Coordinates(RationalArrangement),
    Record(CatalogRecord),
}

/// Names accepted by [`catalog`]; parameterized families take `(d)`.
pub const CATALOG_NAMES: &[&str] = &[
    "triangle",
    "pencil(d)",
    "near-pencil(d)",
    "generic(d)",
    "A(9,1)",
    "A(13,2)",
    "klein",
    "dual-hesse",
    "complex(11;10,3,6)",
];

fn wc(d: u32, n2: u64, n3: u64, n4: u64) -> WeakCombinatorics {
    WeakCombinatorics::quad(d, n2, n3, n4).expect("static catalog data")
}

fn records() -> Vec<CatalogRecord> {
    vec![
        CatalogRecord {
            name: "A(9,1)".into(),
            weak_combinatorics: wc(9, 6, 4, 3),
            field: FieldTag::Real,
            simplicial: Some(true),
            defining_product: None,
            note: "simplicial arrangement realizing the M-combinatorics (9;6,4,3); coordinates not bundled".into(),
        },
        CatalogRecord {
            name: "A(13,2)".into(),
            weak_combinatorics: wc(13, 12, 4, 9),
            field: FieldTag::Real,
            simplicial: Some(true),
            defining_product: None,
            note: "simplicial arrangement realizing the M-combinatorics (13;12,4,9); coordinates not bundled".into(),
        },
        CatalogRecord {
            name: "klein".into(),
            weak_combinatorics: wc(21, 0, 28, 21),
            field: FieldTag::ComplexOnly,
            simplicial: None,
            defining_product: None,
            note: "Klein arrangement of 21 lines, an M-arrangement".into(),
        },
        CatalogRecord {
            name: "dual-hesse".into(),
            weak_combinatorics: wc(9, 0, 12, 0),
            field: FieldTag::ComplexOnly,
            simplicial: None,
            defining_product: None,
            note: "dual Hesse arrangement; attains c1^2/c2 = 8/3".into(),
        },
        CatalogRecord {
            name: "complex(11;10,3,6)".into(),
            weak_combinatorics: wc(11, 10, 3, 6),
            field: FieldTag::ComplexOnly,
            simplicial: None,
            defining_product: Some(
                "xyz(x+y)(x+z)(y-z)(x+(t+1)y)(x+(t+1)z)(y+(-t-1)z)(x+(t+1)y-tz)(x+ty+z), t^2+t+1=0"
                    .into(),
            ),
            note: "free over C for both roots t; not representable over R".into(),
        },
    ]
}

fn line(a: i64, b: i64, c: i64) -> [i64; 3] {
    [a, b, c]
}

/// Lines through `(0:0:1)`: `y`, then `x + t y` for `t = 0, 1, -1, 2, -2, ...`.
pub fn pencil(d: u32) -> Result<RationalArrangement> {
    if d == 0 {
        return Err(Error::InvalidArgument("pencil needs at least one line".into()));
    }
    let mut lines = vec![line(0, 1, 0)];
    let mut t = 0i64;
    while lines.len() < d as usize {
        lines.push(line(1, t, 0));
        t = if t > 0 { -t } else { -t + 1 };
    }
    Ok(RationalArrangement::from_integers(&lines)?.with_name(format!("pencil({d})")))
}

/// `pencil(d - 1)` plus the line `z`.
pub fn near_pencil(d: u32) -> Result<RationalArrangement> {
    if d < 3 {
        return Err(Error::InvalidArgument("near-pencil needs at least three lines".into()));
    }
    let mut lines: Vec<Triple> = pencil(d - 1)?.lines().to_vec();
    lines.push([0.into(), 0.into(), 1.into()]);
    let lines = lines.into_iter().map(|l| l.map(num_rational::BigRational::from_integer)).collect();
    Ok(RationalArrangement::new(lines, Some(format!("near-pencil({d})")), FieldTag::Real)?)
}

pub fn triangle() -> RationalArrangement {
    RationalArrangement::from_integers(&[line(1, 0, 0), line(0, 1, 0), line(0, 0, 1)])
        .expect("static")
        .with_name("triangle")
}

/// `d` lines with only double points: `x, y, z, x+y+z`, then lines
/// `x + a y + b z` chosen greedily in order of `max(|a|,|b|)`, skipping any
/// that pass through an existing intersection point.
pub fn generic(d: u32) -> Result<RationalArrangement> {
    if d == 0 {
        return Err(Error::InvalidArgument("generic arrangement needs at least one line".into()));
    }
    let seed = [line(1, 0, 0), line(0, 1, 0), line(0, 0, 1), line(1, 1, 1)];
    let mut lines: Vec<Triple> = seed.iter().take(d as usize).map(|l| l.map(Into::into)).collect();
    let mut points: Vec<Triple> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            points.push(cross(&lines[i], &lines[j]));
        }
    }
    let mut seen: HashSet<Triple> = lines.iter().cloned().collect();
    let mut s = 1i64;
    'outer: while lines.len() < d as usize {
        for a in -s..=s {
            for b in -s..=s {
                if a.abs().max(b.abs()) != s {
                    continue;
                }
                let cand: Triple = [1.into(), a.into(), b.into()];
                let Some(canon) = canonical_int(&cand) else { continue };
                if seen.contains(&canon) || points.iter().any(|p| dot(p, &canon) == 0.into()) {
                    continue;
                }
                for l in &lines {
                    points.push(cross(l, &canon));
                }
                seen.insert(canon.clone());
                lines.push(canon);
                if lines.len() == d as usize {
                    break 'outer;
                }
            }
        }
        s += 1;
    }
    let lines = lines.into_iter().map(|l| l.map(num_rational::BigRational::from_integer)).collect();
    RationalArrangement::new(lines, Some(format!("generic({d})")), FieldTag::Real)
}

fn family_arg(name: &str, family: &str) -> Option<Result<u32>> {
    let inner = name.strip_prefix(family)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(
        inner
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::UnknownCatalogEntry(name.to_string())),
    )
}

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let name = name.trim();
    if name == "triangle" {
        return Ok(CatalogEntry::Coordinates(triangle()));
    }
    // near-pencil must be tried before pencil
    if let Some(d) = family_arg(name, "near-pencil") {
        return Ok(CatalogEntry::Coordinates(near_pencil(d?)?));
    }
    if let Some(d) = family_arg(name, "pencil") {
        return Ok(CatalogEntry::Coordinates(pencil(d?)?));
    }
    if let Some(d) = family_arg(name, "generic") {
        return Ok(CatalogEntry::Coordinates(generic(d?)?));
    }
    records()
        .into_iter()
        .find(|r| r.name.eq_ignore_ascii_case(name))
        .map(CatalogEntry::Record)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

/// All combinatorics-only records.
pub fn catalog_records() -> Vec<CatalogRecord> {
    records()
}
