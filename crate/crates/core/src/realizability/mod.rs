//! Combinatorial and pseudoline realizability searches.
//!
//! Two exhaustive searches with verifiable witnesses:
//!
//! * [`packing`]: families of 3- and 4-subsets of the lines pairwise sharing
//!   at most one element (the incidence structure of triple and quadruple
//!   points). Non-existence rules out every realization.
//! * [`wiring`]: wiring diagrams, i.e. sequences of adjacent block reversals
//!   taking `1..d` to its reversal. Non-existence rules out realizations by
//!   pseudolines, hence by straight lines.
//!
//! A negative answer is only reported after the search space is exhausted;
//! running out of budget is reported separately.

pub mod packing;
pub mod wiring;

use serde::{Deserialize, Serialize};

use crate::clock::Stopwatch;

pub use packing::{packing_max, partial_linear_space_exists, PackingResult, PartialLinearSpace};
pub use wiring::{wiring_search, WiringDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    WitnessFound,
    ExhaustedNone,
    LimitReached,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    Packing(PartialLinearSpace),
    Wiring(WiringDiagram),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStatistics {
    pub nodes: u64,
    /// Wall time in seconds; kept out of serialized output so that repeated
    /// runs print identical bytes.
    #[serde(skip)]
    pub elapsed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Witness>,
    pub statistics: SearchStatistics,
}

/// Budgets for the exhaustive searches. `None` means unlimited.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    /// Called with `(nodes, seconds)` roughly every `progress_interval` seconds.
    pub progress: Option<fn(u64, f64)>,
    pub progress_interval: f64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_nodes: Some(2_000_000_000),
            max_seconds: Some(120.0),
            progress: None,
            progress_interval: 2.0,
        }
    }
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        Self {
            max_nodes: None,
            max_seconds: None,
            ..Self::default()
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
            max_seconds: None,
            ..Self::default()
        }
    }
}

/// Node counter shared by the searches.
pub(crate) struct Budget {
    limits: SearchLimits,
    clock: Stopwatch,
    pub nodes: u64,
    pub exceeded: bool,
    next_report: f64,
}

impl Budget {
    pub fn new(limits: SearchLimits) -> Self {
        Self {
            limits,
            clock: Stopwatch::start(),
            nodes: 0,
            exceeded: false,
            next_report: limits.progress_interval,
        }
    }

    /// Counts one node; returns `false` once a limit is hit.
    pub fn tick(&mut self) -> bool {
        if self.exceeded {
            return false;
        }
        self.nodes += 1;
        if let Some(max) = self.limits.max_nodes {
            if self.nodes > max {
                self.exceeded = true;
                return false;
            }
        }
        // the clock is read once per 4096 nodes
        if self.nodes % 4096 == 0 && (self.limits.max_seconds.is_some() || self.limits.progress.is_some()) {
            let now = self.clock.elapsed_secs();
            if self.limits.max_seconds.is_some_and(|secs| now > secs) {
                self.exceeded = true;
                return false;
            }
            if let Some(cb) = self.limits.progress {
                if now >= self.next_report {
                    cb(self.nodes, now);
                    self.next_report = now + self.limits.progress_interval;
                }
            }
        }
        true
    }

    pub fn statistics(&self) -> SearchStatistics {
        SearchStatistics {
            nodes: self.nodes,
            elapsed: self.clock.elapsed_secs(),
        }
    }
}
