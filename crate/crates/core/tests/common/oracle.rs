//! Unpruned triple-loop enumeration whose filters are re-derived from the
//! inequalities, without calling the library's filter code.

use std::collections::BTreeSet;

use arrangements::config::{Filter, FilterConfig, SearchCaps};
use arrangements::combinatorics::ShnurnikovConstant;

pub type Tuple = (u32, u64, u64, u64);

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn is_square(n: i64) -> Option<i64> {
    (0..=n.max(0)).take_while(|s| s * s <= n).find(|s| s * s == n)
}

struct Oracle {
    free: bool,
    melchior: bool,
    shnurnikov: Option<i64>,
    cond4: bool,
    integrality: bool,
    m: bool,
    caps: Option<SearchCaps>,
}

impl Oracle {
    fn from(cfg: &FilterConfig) -> Self {
        let active = cfg.active_filters();
        let c = match cfg.shnurnikov_constant {
            ShnurnikovConstant::Strict9 => 9,
            ShnurnikovConstant::Script8 => 8,
        };
        Oracle {
            free: active.contains(&Filter::FreeBounds),
            melchior: active.contains(&Filter::Melchior),
            shnurnikov: active.contains(&Filter::Shnurnikov).then_some(c),
            cond4: active.contains(&Filter::ScriptCond4),
            integrality: active.contains(&Filter::FreenessIntegrality),
            m: active.contains(&Filter::MArrangement) || active.contains(&Filter::MBounds),
            caps: cfg.search_caps,
        }
    }

    fn admits(&self, (d, n2, n3, n4): Tuple) -> bool {
        let (di, a, b, c) = (d as i64, n2 as i64, n3 as i64, n4 as i64);
        if a + 3 * b + 6 * c != di * (di - 1) / 2 {
            return false;
        }
        if (d < 3 && b > 0) || (d < 4 && c > 0) {
            return false;
        }
        // pencils: a single point on all lines
        if (d == 3 && b == 1 && a == 0) || (d == 4 && c == 1 && a == 0 && b == 0) {
            return false;
        }
        if let Some(caps) = self.caps {
            if n2 < caps.n2_min || n2 > caps.n2_max || n3 > caps.n3_max || n4 > caps.n4_max {
                return false;
            }
        }
        if self.free && (2 * (a + b) > 3 * di - 3 || 12 * c < di * di - 10 * di + 9) {
            return false;
        }
        if self.melchior && a < 3 + c {
            return false;
        }
        if let Some(k) = self.shnurnikov {
            let count = |k: i64| [a, b, c].get((k - 2) as usize).copied().unwrap_or(0);
            let top_free = (di - 2..=di).filter(|&k| k >= 2).all(|k| count(k) == 0);
            let exempt = d == 7 && a == 9 && c == 2;
            if top_free && !exempt && 2 * a + 3 * b < 2 * k + c {
                return false;
            }
        }
        if self.cond4 && 2 * a + 3 * b < 16 + c {
            return false;
        }
        let tau = a + 4 * b + 9 * c;
        if self.integrality {
            let dm = di - 1;
            // a free exponent r < d/2 solving tau = dm (dm - r) + r^2
            if !(0..=dm).any(|r| 2 * r < di && dm * (dm - r) + r * r == tau) {
                return false;
            }
            let disc = 4 * tau - 3 * dm * dm;
            assert!(is_square(disc).is_some(), "{d},{n2},{n3},{n4}");
        }
        if self.m {
            let m = di / 2;
            let (target, cap, floor) = if d % 2 == 1 {
                (3 * m * m + 1, 3 * m, ceil_div(3 * m * m - 12 * m + 1, 9))
            } else {
                (3 * m * m - 3 * m + 3, (6 * m - 3) / 2, ceil_div(m * m - 5 * m + 3, 3))
            };
            if d < 4 || tau != target {
                return false;
            }
            let bounded = (d % 2 == 1 && d >= 5) || (d % 2 == 0 && d >= 6);
            if bounded && (a + b > cap || c < floor.max(0)) {
                return false;
            }
        }
        true
    }
}

pub fn oracle_rows(d_max: u32, cfg: &FilterConfig) -> BTreeSet<Tuple> {
    let o = Oracle::from(cfg);
    let mut out = BTreeSet::new();
    for d in 3..=d_max {
        let pairs = (d * (d - 1) / 2) as u64;
        for n2 in 0..=pairs {
            for n3 in 0..=pairs {
                for n4 in 0..=pairs {
                    if o.admits((d, n2, n3, n4)) {
                        out.insert((d, n2, n3, n4));
                    }
                }
            }
        }
    }
    out
}

pub fn as_set(rows: &[arrangements::enumeration::EnumerationRow]) -> BTreeSet<Tuple> {
    rows.iter()
        .map(|r| (r.wc.d(), r.wc.n(2), r.wc.n(3), r.wc.n(4)))
        .collect()
}

pub fn configs() -> Vec<(&'static str, FilterConfig)> {
    let mut shn8 = FilterConfig::paper_table();
    shn8.include_shnurnikov = true;
    shn8.shnurnikov_constant = ShnurnikovConstant::Script8;
    let mut bare = FilterConfig::paper_table();
    bare.filters.clear();
    let mut integrality = FilterConfig::paper_table();
    integrality.include_freeness_integrality = true;
    vec![
        ("paper-table", FilterConfig::paper_table()),
        ("script-compat", FilterConfig::script_compat(false)),
        ("script-compat+cond4", FilterConfig::script_compat(true)),
        ("strict", FilterConfig::strict()),
        ("shnurnikov-8", shn8),
        ("naive-count-only", bare),
        ("integrality", integrality),
    ]
}

