use thiserror::Error;

use crate::rack::ValidationError;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPerm(String),

    #[error("invalid rack: {0}")]
    InvalidRack(#[from] ValidationError),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("subset is not a subrack")]
    NotSubrack,

    #[error("{0} requires a non-empty rack")]
    EmptyRack(&'static str),

    #[error("rack is not homogeneous")]
    NotHomogeneous,

    #[error("rack is not connected")]
    NotConnected,

    #[error("rack is not a quandle")]
    NotQuandle,

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("elements {0:?} do not form a subgroup")]
    NotSubgroup(Vec<usize>),

    #[error("[h, mu] = {commutator} is not in the normal core of H (h = {h})")]
    CosetCondition { h: usize, commutator: usize },

    #[error("element {a} does not centralize the subgroup (fails on {h})")]
    NotInCentralizer { a: usize, h: usize },

    #[error("subset is not closed under conjugation")]
    NotConjugationClosed,

    #[error("crossed sets live over different groups")]
    GroupMismatch,

    #[error("invalid crossed set: {0}")]
    InvalidCrossed(String),

    #[error("index {index} out of range for size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("precondition failed: {0}")]
    Precondition(&'static str),

    #[error("unknown class: {0}")]
    UnknownClass(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
