//! Packings of 3- and 4-subsets pairwise meeting in at most one element.
//!
//! Blocks are `u32` bitmasks, enumerated in lexicographic order of their
//! sorted tuples. The search only extends a partial family by blocks that come
//! later in that order (orderly generation), so each family is visited once.
//! The first block is fixed to `{0, .., k-1}`, which every nonempty family
//! can be relabelled to contain.

use serde::{Deserialize, Serialize};

use super::{Budget, SearchLimits, SearchOutcome, SearchStatus, Witness};
use crate::combinatorics::WeakCombinatorics;
use crate::error::{Error, Result};

/// Largest ground set handled by the bitmask representation.
pub const MAX_GROUND: u32 = 32;

/// Blocks on ground set `{1..d}` pairwise sharing at most one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialLinearSpace {
    pub ground_size: u32,
    pub blocks: Vec<Vec<u32>>,
}

impl PartialLinearSpace {
    fn from_masks(ground_size: u32, masks: &[u32]) -> Self {
        let mut blocks: Vec<Vec<u32>> = masks.iter().map(|&m| elements(m).map(|e| e + 1).collect()).collect();
        blocks.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        Self { ground_size, blocks }
    }

    /// Number of blocks of size 3 and 4.
    pub fn block_counts(&self) -> (u64, u64) {
        let n3 = self.blocks.iter().filter(|b| b.len() == 3).count() as u64;
        let n4 = self.blocks.iter().filter(|b| b.len() == 4).count() as u64;
        (n3, n4)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        let mut masks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            if !(3..=4).contains(&b.len()) {
                return Err(format!("block {b:?} has size {}", b.len()));
            }
            let mut mask = 0u64;
            for &e in b {
                if e == 0 || e > self.ground_size {
                    return Err(format!("element {e} outside 1..={}", self.ground_size));
                }
                if mask & (1 << e) != 0 {
                    return Err(format!("block {b:?} repeats {e}"));
                }
                mask |= 1 << e;
            }
            masks.push(mask);
        }
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                if (masks[i] & masks[j]).count_ones() > 1 {
                    return Err(format!(
                        "blocks {:?} and {:?} share more than one element",
                        self.blocks[i], self.blocks[j]
                    ));
                }
            }
        }
        Ok(())
    }

    /// Checks the block counts against `(n3, n4)` of a weak combinatorics.
    pub fn validate_for(&self, wc: &WeakCombinatorics) -> std::result::Result<(), String> {
        self.validate()?;
        if self.ground_size != wc.d() {
            return Err(format!("ground size {} but d = {}", self.ground_size, wc.d()));
        }
        if self.block_counts() != (wc.n(3), wc.n(4)) {
            return Err(format!(
                "block counts {:?} do not match (n3, n4) = ({}, {})",
                self.block_counts(),
                wc.n(3),
                wc.n(4)
            ));
        }
        Ok(())
    }
}

fn elements(mask: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// All `k`-subsets of `{0..v-1}` in lexicographic order.
fn subsets(v: u32, k: u32) -> Vec<u32> {
    fn rec(start: u32, v: u32, k: u32, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for e in start..v {
            if v - e < k {
                break;
            }
            rec(e + 1, v, k - 1, acc | (1 << e), out);
        }
    }
    let mut out = Vec::new();
    rec(0, v, k, 0, &mut out);
    out
}

/// `floor(v/k * floor((v-1)/(k-1)))`.
pub fn johnson_bound(v: u32, k: u32) -> u64 {
    if v < k {
        return 0;
    }
    (v as u64 * ((v as u64 - 1) / (k as u64 - 1))) / k as u64
}

struct Search<'a> {
    v: u32,
    /// `partners[e]`: elements already sharing a block with `e`.
    partners: Vec<u32>,
    chosen: Vec<u32>,
    budget: &'a mut Budget,
}

impl Search<'_> {
    fn new(v: u32, budget: &mut Budget) -> Search<'_> {
        Search {
            v,
            partners: vec![0; v as usize],
            chosen: Vec::new(),
            budget,
        }
    }

    fn push(&mut self, b: u32) {
        for e in elements(b) {
            self.partners[e as usize] |= b & !(1 << e);
        }
        self.chosen.push(b);
    }

    fn pop(&mut self) {
        let b = self.chosen.pop().expect("nonempty");
        for e in elements(b) {
            self.partners[e as usize] &= !b;
        }
    }

    fn fits(&self, b: u32) -> bool {
        elements(b).all(|e| self.partners[e as usize] & b == 0)
    }

    /// How many more `k`-blocks the candidate list can supply: each element
    /// lies in at most `free/(k-1)` further blocks and in at most as many
    /// candidates as contain it.
    fn capacity(&self, cands: &[u32], k: u32) -> u64 {
        let mut count = [0u32; MAX_GROUND as usize];
        let mut union = 0u32;
        for &c in cands {
            union |= c;
            for e in elements(c) {
                count[e as usize] += 1;
            }
        }
        let incidences: u64 = elements(union)
            .map(|e| {
                let free = (union & !self.partners[e as usize] & !(1 << e)).count_ones();
                (count[e as usize]).min(free / (k - 1)) as u64
            })
            .sum();
        (incidences / k as u64).min(cands.len() as u64)
    }

    fn maximize(&mut self, cands: &[u32], k: u32, best: &mut Vec<u32>, ceiling: u64) -> bool {
        if !self.budget.tick() {
            return false;
        }
        if self.chosen.len() > best.len() {
            *best = self.chosen.clone();
        }
        if best.len() as u64 >= ceiling {
            return true;
        }
        if self.chosen.len() as u64 + self.capacity(cands, k) <= best.len() as u64 {
            return true;
        }
        for (i, &b) in cands.iter().enumerate() {
            if self.chosen.len() + cands.len() - i <= best.len() {
                break;
            }
            let next: Vec<u32> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&c| (c & b).count_ones() <= 1)
                .collect();
            self.push(b);
            let ok = self.maximize(&next, k, best, ceiling);
            self.pop();
            if !ok {
                return false;
            }
            if best.len() as u64 >= ceiling {
                return true;
            }
        }
        true
    }

    /// Places `need` more `k`-blocks from `cands`; once the quadruples are
    /// placed, continues with `n3_after` triples. `None` means the budget ran out.
    fn place(&mut self, cands: &[u32], k: u32, need: u64, n3_after: u64, fix_first: bool) -> Option<bool> {
        if !self.budget.tick() {
            return None;
        }
        if need == 0 {
            if k == 4 && n3_after > 0 {
                let triples: Vec<u32> = subsets(self.v, 3).into_iter().filter(|&t| self.fits(t)).collect();
                let fix = self.chosen.is_empty();
                return self.place(&triples, 3, n3_after, 0, fix);
            }
            return Some(true);
        }
        if self.capacity(cands, k) < need {
            return Some(false);
        }
        let limit = if fix_first { 1 } else { cands.len() };
        for (i, &b) in cands.iter().enumerate().take(limit) {
            if ((cands.len() - i) as u64) < need {
                break;
            }
            let next: Vec<u32> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&c| (c & b).count_ones() <= 1)
                .collect();
            self.push(b);
            let r = self.place(&next, k, need - 1, n3_after, false);
            if r != Some(false) {
                if r.is_none() {
                    self.pop();
                }
                return r;
            }
            self.pop();
        }
        Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub ground_size: u32,
    pub block_size: u32,
    /// Largest family found; the exact maximum when `exhaustive`.
    pub max: u64,
    pub exhaustive: bool,
    pub witness: PartialLinearSpace,
    pub nodes: u64,
}

/// Maximum number of `k`-subsets of a `v`-set pairwise sharing at most one
/// element, by branch and bound.
pub fn packing_max(v: u32, k: u32, limits: SearchLimits) -> Result<PackingResult> {
    if !(3..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!("block size must be 3 or 4, got {k}")));
    }
    if v > MAX_GROUND {
        return Err(Error::ResourceLimit(format!("ground size {v} exceeds {MAX_GROUND}")));
    }
    let mut budget = Budget::new(limits);
    let ceiling = johnson_bound(v, k);
    let all = subsets(v, k);
    let mut best = Vec::new();
    let mut complete = true;
    if let Some((&first, rest)) = all.split_first() {
        let mut search = Search::new(v, &mut budget);
        search.push(first);
        let cands: Vec<u32> = rest.iter().copied().filter(|&c| (c & first).count_ones() <= 1).collect();
        complete = search.maximize(&cands, k, &mut best, ceiling);
    }
    let witness = PartialLinearSpace::from_masks(v, &best);
    debug_assert!(witness.validate().is_ok());
    Ok(PackingResult {
        ground_size: v,
        block_size: k,
        max: best.len() as u64,
        exhaustive: complete,
        witness,
        nodes: budget.nodes,
    })
}

/// Searches for `n4` quadruple and `n3` triple blocks on `d` elements,
/// pairwise sharing at most one element. `n2` follows from consistency.
pub fn partial_linear_space_exists(wc: &WeakCombinatorics, limits: SearchLimits) -> Result<SearchOutcome> {
    wc.require_consistent()?;
    wc.require_quadruple_bounded()?;
    let d = wc.d();
    if d > MAX_GROUND {
        return Err(Error::ResourceLimit(format!("d = {d} exceeds {MAX_GROUND}")));
    }
    let (n3, n4) = (wc.n(3), wc.n(4));
    let mut budget = Budget::new(limits);
    let mut witness = None;
    let found = if n4 > johnson_bound(d, 4) || n3 > johnson_bound(d, 3) {
        Some(false)
    } else {
        let mut search = Search::new(d, &mut budget);
        let r = if n4 > 0 {
            search.place(&subsets(d, 4), 4, n4, n3, true)
        } else {
            search.place(&subsets(d, 3), 3, n3, 0, true)
        };
        if r == Some(true) {
            witness = Some(PartialLinearSpace::from_masks(d, &search.chosen));
        }
        r
    };
    let status = match found {
        Some(true) => SearchStatus::WitnessFound,
        Some(false) => SearchStatus::ExhaustedNone,
        None => SearchStatus::LimitReached,
    };
    if let Some(w) = &witness {
        w.validate_for(wc).expect("emitted witness revalidates");
    }
    Ok(SearchOutcome {
        status,
        witness: witness.map(Witness::Packing),
        statistics: budget.statistics(),
    })
}
