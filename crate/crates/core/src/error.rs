use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid weak combinatorics: {0}")]
    InvalidCombinatorics(String),
    #[error("inconsistent weak combinatorics {wc}: pair count {pairs} != C(d,2) = {expected}")]
    Inconsistent {
        wc: String,
        pairs: u64,
        expected: u64,
    },
    #[error("{wc} has a point of multiplicity {max} > 4")]
    NotQuadrupleBounded { wc: String, max: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("lines {first} and {second} are proportional")]
    DuplicateLine { first: usize, second: usize },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
