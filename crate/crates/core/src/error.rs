use thiserror::Error;

use crate::sequence::ItemId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("item {item} is outside the ground set of size {n}")]
    ItemOutOfRange { item: ItemId, n: usize },

    #[error("item {0} appears more than once")]
    DuplicateItem(ItemId),

    #[error("item {0} is already in the sequence")]
    ItemAlreadyPresent(ItemId),

    #[error("sequence length {len} exceeds ground set size {n}")]
    SequenceTooLong { len: usize, n: usize },

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("weight {index} is {value}; weights must be nonnegative")]
    NegativeWeight { index: usize, value: f64 },

    #[error("expected {expected} oracles, got {got}")]
    OracleCount { expected: usize, got: usize },

    #[error("oracle {index} has ground set size {got}, expected {expected}")]
    OracleGroundSet {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("k = {k} is infeasible for a ground set of size {n}")]
    InvalidK { k: usize, n: usize },

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("forced coin stream exhausted after {0} draws")]
    CoinStreamExhausted(usize),

    #[error(
        "forced backup set {forced:?} is invalid: expected {expected} items from {candidates:?}"
    )]
    InvalidForcedBackup {
        forced: Vec<ItemId>,
        expected: usize,
        candidates: Vec<ItemId>,
    },

    #[error("operation requires a homogeneous bundle")]
    NotHomogeneous,

    #[error("k = {k} is below the half-split point {half} for n = {n}")]
    BelowHalf { k: usize, half: usize, n: usize },

    #[error("position index j = {j} is invalid for n = {n} (valid range {lo}..={hi})")]
    InvalidPosition {
        j: usize,
        n: usize,
        lo: usize,
        hi: usize,
    },

    #[error("instance too large for exhaustive enumeration: n = {n}, k = {k}")]
    TooLarge { n: usize, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("round {round}: {source}")]
    Round {
        round: usize,
        #[source]
        source: Box<Error>,
    },
}
