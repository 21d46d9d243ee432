use thiserror::Error;

use crate::subset::SubsetId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set must have at least one element")]
    EmptyGroundSet,

    #[error("ground set of {0} elements is larger than supported")]
    GroundSetTooLarge(usize),

    #[error("invalid element labels: {0}")]
    InvalidLabels(String),

    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("terms are defined on different ground sets")]
    MixedGroundSets,

    #[error("negative coefficient {0}")]
    NegativeCoefficient(String),

    #[error("negative rank value {value} at subset {subset:?}")]
    NegativeValue { subset: SubsetId, value: String },

    #[error("subset {0:?} is not a flat")]
    NotAFlat(SubsetId),

    #[error("not a polymatroid: {0}")]
    NotAPolymatroid(String),

    #[error("not an excess function: {0}")]
    InvalidExcess(String),

    #[error("not a modular filter: {0}")]
    InvalidFilter(String),

    #[error("ground set size {0} outside the supported range {1}")]
    UnsupportedSize(usize, &'static str),

    #[error("vector is not an extreme ray: {0}")]
    NotExtreme(String),

    #[error("integer overflow during exact enumeration")]
    Overflow,

    #[error("enumeration budget exceeded ({0}); precompute the rays once and load them with the import path instead")]
    BudgetExceeded(String),

    #[error("invalid linear representation: {0}")]
    InvalidRepresentation(String),

    #[error("parse error: {0}")]
    Parse(String),
}
