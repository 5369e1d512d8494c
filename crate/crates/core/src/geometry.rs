//! Explicit projective line arrangements with exact coordinates.
//!
//! Lines are stored as coefficient triples `(a, b, c)` of `a x + b y + c z`,
//! canonicalized to coprime integers whose first nonzero entry is positive.
//! Intersection points use the same canonical form, so grouping by point is a
//! hash-map lookup.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{melchior, Status, WeakCombinatorics};
use crate::error::{Error, Result};
use crate::exact::binom2;

pub type Triple = [BigInt; 3];

/// Clears denominators, divides by the gcd and makes the first nonzero entry
/// positive. Returns `None` for the zero vector.
pub fn canonical_triple(v: &[BigRational; 3]) -> Option<Triple> {
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    canonical_int(&[ints[0].clone(), ints[1].clone(), ints[2].clone()])
}

pub fn canonical_int(v: &Triple) -> Option<Triple> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return None;
    }
    let lead_negative = v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    let sign = if lead_negative { -BigInt::one() } else { BigInt::one() };
    Some([&v[0] / &g * &sign, &v[1] / &g * &sign, &v[2] / &g * &sign])
}

pub fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &Triple, b: &Triple) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldTag {
    Real,
    ComplexOnly,
}

impl FieldTag {
    fn as_str(self) -> &'static str {
        match self {
            FieldTag::Real => "real",
            FieldTag::ComplexOnly => "complex-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalArrangement {
    lines: Vec<Triple>,
    name: Option<String>,
    field: FieldTag,
}

impl RationalArrangement {
    /// Canonicalizes each line; rejects zero triples and proportional pairs.
    pub fn new(lines: Vec<[BigRational; 3]>, name: Option<String>, field: FieldTag) -> Result<Self> {
        let mut canon: Vec<Triple> = Vec::with_capacity(lines.len());
        for (i, l) in lines.iter().enumerate() {
            let c = canonical_triple(l).ok_or_else(|| {
                Error::InvalidArgument(format!("line {i} has all coefficients zero"))
            })?;
            if let Some(j) = canon.iter().position(|x| *x == c) {
                return Err(Error::DuplicateLine { first: j, second: i });
            }
            canon.push(c);
        }
        if canon.is_empty() {
            return Err(Error::InvalidArgument("an arrangement needs at least one line".into()));
        }
        Ok(Self {
            lines: canon,
            name,
            field,
        })
    }

    pub fn from_integers(lines: &[[i64; 3]]) -> Result<Self> {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        Self::new(
            lines.iter().map(|l| [q(l[0]), q(l[1]), q(l[2])]).collect(),
            None,
            FieldTag::Real,
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn lines(&self) -> &[Triple] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn rational_lines(&self) -> Vec<[BigRational; 3]> {
        self.lines
            .iter()
            .map(|l| l.clone().map(BigRational::from_integer))
            .collect()
    }

    /// Applies the point transformation `p -> M p`; lines move by `M^{-T}`
    /// (up to the scalar `det M`). Rejects singular `M`.
    pub fn transform(&self, m: &[[i64; 3]; 3]) -> Result<Self> {
        let b = |r: usize, c: usize| BigInt::from(m[r][c]);
        let rows: [Triple; 3] = [
            [b(0, 0), b(0, 1), b(0, 2)],
            [b(1, 0), b(1, 1), b(1, 2)],
            [b(2, 0), b(2, 1), b(2, 2)],
        ];
        // rows of the cofactor matrix det(M) M^{-T}
        let cof = [cross(&rows[1], &rows[2]), cross(&rows[2], &rows[0]), cross(&rows[0], &rows[1])];
        if dot(&rows[0], &cof[0]).is_zero() {
            return Err(Error::InvalidArgument("singular coordinate change".into()));
        }
        let lines = self
            .lines
            .iter()
            .map(|l| [dot(&cof[0], l), dot(&cof[1], l), dot(&cof[2], l)].map(BigRational::from_integer))
            .collect();
        Self::new(lines, self.name.clone(), self.field)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Text format: `#` comments, optional `field real|complex-only` and
/// `name <label>` header lines, then one line of three rationals per line.
impl FromStr for RationalArrangement {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut field = FieldTag::Real;
        let mut name = None;
        let mut lines = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: no + 1, message };
            if let Some(rest) = line.strip_prefix("field") {
                field = match rest.trim() {
                    "real" => FieldTag::Real,
                    "complex-only" => FieldTag::ComplexOnly,
                    other => return Err(parse_err(format!("unknown field tag `{other}`"))),
                };
                continue;
            }
            if let Some(rest) = line.strip_prefix("name") {
                name = Some(rest.trim().to_string());
                continue;
            }
            let coeffs = line
                .split_whitespace()
                .map(|t| t.parse::<BigRational>().map_err(|e| parse_err(format!("`{t}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let [a, b, c]: [BigRational; 3] = coeffs
                .try_into()
                .map_err(|v: Vec<_>| parse_err(format!("expected 3 coefficients, found {}", v.len())))?;
            lines.push([a, b, c]);
        }
        Self::new(lines, name, field)
    }
}

impl fmt::Display for RationalArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field.as_str())?;
        if let Some(name) = &self.name {
            writeln!(f, "name {name}")?;
        }
        for l in &self.lines {
            writeln!(f, "{} {} {}", l[0], l[1], l[2])?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    /// Canonical homogeneous coordinates, as decimal strings.
    pub coordinates: [String; 3],
    pub multiplicity: u32,
    /// Indices of the lines through the point.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionSummary {
    pub points: Vec<IntersectionPoint>,
    pub weak_combinatorics: WeakCombinatorics,
}

pub fn intersection_summary(arr: &RationalArrangement) -> IntersectionSummary {
    let lines = arr.lines();
    let mut by_point: HashMap<Triple, Vec<usize>> = HashMap::new();
    let mut order: Vec<Triple> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = canonical_int(&cross(&lines[i], &lines[j]))
                .expect("distinct canonical lines meet in a point");
            let entry = by_point.entry(p.clone()).or_insert_with(|| {
                order.push(p);
                Vec::new()
            });
            for k in [i, j] {
                if !entry.contains(&k) {
                    entry.push(k);
                }
            }
        }
    }
    let mut points: Vec<IntersectionPoint> = order
        .into_iter()
        .map(|p| {
            let mut through = by_point.remove(&p).unwrap_or_default();
            through.sort_unstable();
            IntersectionPoint {
                coordinates: [p[0].to_string(), p[1].to_string(), p[2].to_string()],
                multiplicity: through.len() as u32,
                lines: through,
            }
        })
        .collect();
    points.sort_by(|a, b| b.multiplicity.cmp(&a.multiplicity).then(a.lines.cmp(&b.lines)));

    let d = lines.len() as u32;
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for p in &points {
        *counts.entry(p.multiplicity).or_insert(0) += 1;
    }
    let wc = WeakCombinatorics::new(d, counts).expect("multiplicities lie in [2, d]");
    let pairs: i64 = points.iter().map(|p| binom2(p.multiplicity as i64)).sum();
    assert_eq!(pairs, binom2(d as i64), "every pair of lines meets exactly once");
    IntersectionSummary {
        points,
        weak_combinatorics: wc,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SimplicialVerdict {
    Simplicial,
    NonSimplicial { slack: i64 },
    NotApplicable { reason: String },
}

/// Simpliciality of a real arrangement, decided by Melchior equality.
pub fn simplicial_certificate(arr: &RationalArrangement) -> SimplicialVerdict {
    if arr.field() != FieldTag::Real {
        return SimplicialVerdict::NotApplicable {
            reason: "arrangement is not real".into(),
        };
    }
    let wc = intersection_summary(arr).weak_combinatorics;
    let verdict = melchior(&wc);
    match (verdict.status, verdict.slack) {
        (Status::Pass | Status::Fail, Some(s)) => {
            let s = s.to_integer();
            // real lines obey Melchior, so s < 0 cannot occur
            debug_assert!(s >= 0);
            if s == 0 {
                SimplicialVerdict::Simplicial
            } else {
                SimplicialVerdict::NonSimplicial { slack: s }
            }
        }
        _ => SimplicialVerdict::NotApplicable {
            reason: "fewer than three lines or a pencil".into(),
        },
    }
}
