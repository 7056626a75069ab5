use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {0:?} is not weakly decreasing")]
    NotDominant(Vec<i64>),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("index set {set:?} is not an {size}-element subset of [1;{ambient}]")]
    BadIndexSet {
        set: Vec<usize>,
        size: usize,
        ambient: usize,
    },

    #[error("index {index} out of range [1;{ambient}]")]
    IndexOutOfRange { index: usize, ambient: usize },

    #[error("{0:?} is not an increasing chain I1 < I2")]
    BadTwoStep((Vec<usize>, Vec<usize>)),

    #[error("index set {0:?} is not isotropic (meets its bar image)")]
    NotIsotropic(Vec<usize>),

    #[error("rank out of range: {0}")]
    Range(String),

    #[error("arithmetic overflow")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group/rank mismatch: {0}")]
    GroupMismatch(String),

    #[error("linear program infeasible: {0}")]
    LpInfeasible(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
