//! Wiring diagrams with prescribed numbers of 2-, 3- and 4-fold crossings.
//!
//! Wires start in order `0..d`. An event `(p, k)` reverses the `k` wires in
//! positions `p..p+k`, which must not have crossed yet (they appear in
//! increasing order). A diagram is complete when the order is reversed, i.e.
//! every pair crossed exactly once.
//!
//! Disjoint consecutive events commute, so the search only emits sequences in
//! which such a pair appears with the left event first. The first event is
//! restricted to the left half (`2p + k <= d`) by mirror symmetry. Failed
//! states are memoized on (order, remaining budgets, last event).

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Budget, SearchLimits, SearchOutcome, SearchStatus, Witness};
use crate::combinatorics::WeakCombinatorics;
use crate::error::{Error, Result};

pub const MAX_WIRES: u32 = 16;
const MEMO_CAP: usize = 8_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiringDiagram {
    pub wires: u32,
    /// `(position, size)`, positions counted from 0.
    pub events: Vec<(u32, u32)>,
}

impl WiringDiagram {
    /// Replays the events; returns the counts `k -> n_k` of crossings.
    pub fn validate(&self) -> std::result::Result<BTreeMap<u32, u64>, String> {
        let d = self.wires as usize;
        let mut order: Vec<u32> = (0..self.wires).collect();
        let mut counts = BTreeMap::new();
        for (i, &(pos, size)) in self.events.iter().enumerate() {
            let (p, k) = (pos as usize, size as usize);
            if k < 2 || p + k > d {
                return Err(format!("event {i} ({pos}, {size}) does not fit {d} wires"));
            }
            if order[p..p + k].windows(2).any(|w| w[0] > w[1]) {
                return Err(format!("event {i} ({pos}, {size}) recrosses a pair"));
            }
            order[p..p + k].reverse();
            *counts.entry(size).or_insert(0) += 1;
        }
        if order.iter().rev().copied().ne(0..self.wires) {
            return Err("some pair of wires never crosses".into());
        }
        Ok(counts)
    }

    pub fn validate_for(&self, wc: &WeakCombinatorics) -> std::result::Result<(), String> {
        let counts = self.validate()?;
        let expected: BTreeMap<u32, u64> = wc.counts().clone();
        if self.wires != wc.d() || counts != expected {
            return Err(format!("diagram yields {counts:?}, expected {expected:?} on {} wires", wc.d()));
        }
        Ok(())
    }

    /// Blocks of the 3- and 4-fold crossings, as 1-based wire labels.
    pub fn crossing_blocks(&self) -> Vec<Vec<u32>> {
        let mut order: Vec<u32> = (0..self.wires).collect();
        let mut blocks = Vec::new();
        for &(pos, size) in &self.events {
            let range = pos as usize..(pos + size) as usize;
            if size >= 3 {
                let mut b: Vec<u32> = order[range.clone()].iter().map(|w| w + 1).collect();
                b.sort_unstable();
                blocks.push(b);
            }
            order[range].reverse();
        }
        blocks
    }
}

struct Search<'a> {
    d: usize,
    order: [u8; MAX_WIRES as usize],
    remaining: [u64; 5],
    events: Vec<(u32, u32)>,
    dead: HashSet<(u64, u64, u64, u16)>,
    budget: &'a mut Budget,
}

impl Search<'_> {
    fn key(&self) -> u64 {
        self.order[..self.d]
            .iter()
            .fold(0u64, |acc, &w| (acc << 4) | w as u64)
    }

    fn uncrossed(&self, p: usize, k: usize) -> bool {
        self.order[p..p + k].windows(2).all(|w| w[0] < w[1])
    }

    fn done(&self) -> bool {
        self.remaining.iter().all(|&r| r == 0)
    }

    fn dfs(&mut self, last: Option<(usize, usize)>) -> Option<bool> {
        if self.done() {
            return Some(true);
        }
        if !self.budget.tick() {
            return None;
        }
        let code = last.map_or(u16::MAX, |(p, k)| (p * 8 + k) as u16);
        let state = (self.key(), self.remaining[3], self.remaining[4], code);
        if self.dead.contains(&state) {
            return Some(false);
        }
        for k in [4usize, 3, 2] {
            if self.remaining[k] == 0 || k > self.d {
                continue;
            }
            for p in 0..=self.d - k {
                match last {
                    // disjoint from the previous event and to its left
                    Some((lp, _)) if p + k <= lp => continue,
                    None if 2 * p + k > self.d => continue,
                    _ => {}
                }
                if !self.uncrossed(p, k) {
                    continue;
                }
                self.order[p..p + k].reverse();
                self.remaining[k] -= 1;
                self.events.push((p as u32, k as u32));
                let r = self.dfs(Some((p, k)));
                if r != Some(false) {
                    return r;
                }
                self.events.pop();
                self.remaining[k] += 1;
                self.order[p..p + k].reverse();
            }
        }
        if self.dead.len() < MEMO_CAP {
            self.dead.insert(state);
        }
        Some(false)
    }
}

/// Exhaustive search for a wiring diagram with the given weak combinatorics.
pub fn wiring_search(wc: &WeakCombinatorics, limits: SearchLimits) -> Result<SearchOutcome> {
    wc.require_consistent()?;
    wc.require_quadruple_bounded()?;
    let d = wc.d();
    if d < 3 {
        return Err(Error::InvalidArgument("wiring search needs d >= 3".into()));
    }
    if d > MAX_WIRES {
        return Err(Error::ResourceLimit(format!("d = {d} exceeds {MAX_WIRES} wires")));
    }
    let mut budget = Budget::new(limits);
    let mut order = [0u8; MAX_WIRES as usize];
    for (i, w) in order.iter_mut().enumerate().take(d as usize) {
        *w = i as u8;
    }
    let mut search = Search {
        d: d as usize,
        order,
        remaining: [0, 0, wc.n(2), wc.n(3), wc.n(4)],
        events: Vec::new(),
        dead: HashSet::new(),
        budget: &mut budget,
    };
    let result = search.dfs(None);
    let witness = (result == Some(true)).then(|| WiringDiagram {
        wires: d,
        events: std::mem::take(&mut search.events),
    });
    if let Some(w) = &witness {
        w.validate_for(wc).expect("emitted witness revalidates");
    }
    let status = match result {
        Some(true) => SearchStatus::WitnessFound,
        Some(false) => SearchStatus::ExhaustedNone,
        None => SearchStatus::LimitReached,
    };
    Ok(SearchOutcome {
        status,
        witness: witness.map(Witness::Wiring),
        statistics: budget.statistics(),
    })
}
