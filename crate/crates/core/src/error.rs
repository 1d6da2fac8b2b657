use thiserror::Error;

use crate::poset::ElementId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("unknown element ({rank}, {index})", rank = .0.rank, index = .0.index)]
    UnknownElement(ElementId),

    #[error("malformed poset: {0}")]
    Malformed(String),

    #[error("rank {requested} exceeds the truncation rank {max_rank}")]
    Truncation { requested: usize, max_rank: usize },

    #[error("operator word {prefix:?} leaves the available ranks (max rank {max_rank})")]
    WordOutOfRange { prefix: String, max_rank: usize },

    #[error("down operator applied at rank 0")]
    RankUnderflow,

    #[error("result has negative rank {0}")]
    NegativeRank(i64),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("enumeration cap exceeded: size {size} > cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no closed form for {0}")]
    NoClosedForm(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = PosetError> = std::result::Result<T, E>;
