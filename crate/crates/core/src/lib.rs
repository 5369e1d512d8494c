//! Weak combinatorics of line arrangements with points of multiplicity at
//! most four: closed-form filters, freeness from combinatorics and from exact
//! Jacobian syzygies, exhaustive enumeration, realizability searches with
//! verifiable witnesses, and log Chern numbers.

pub mod catalog;
pub mod chern;
pub mod clock;
pub mod combinatorics;
pub mod config;
pub mod enumeration;
pub mod error;
pub mod exact;
pub mod freeness;
pub mod geometry;
pub mod linalg;
pub mod output;
pub mod poly;
pub mod realizability;
pub mod report;
pub mod syzygy;

pub use combinatorics::{FilterId, FilterVerdict, Status, WeakCombinatorics};
pub use config::{FilterConfig, Mode};
pub use error::{Error, Result};
