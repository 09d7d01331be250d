use thiserror::Error;

use crate::matroid::AxiomVerdict;
use crate::sets::EquivalenceVerdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("duplicate element identifier `{0}`")]
    DuplicateElement(String),
    #[error("unknown element identifier `{0}`")]
    UnknownElement(String),
    #[error("operands belong to different universes")]
    UniverseMismatch,
    #[error("relation is not an equivalence: {0}")]
    NotEquivalence(EquivalenceVerdict),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("set is not contained in the ground set")]
    NotInGround,
    #[error("ground sets of direct-sum components overlap")]
    OverlappingGrounds,
    #[error("enumeration over {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("output of {count} sets exceeds the cap of {cap}")]
    OutputCapExceeded { count: u128, cap: u128 },
    #[error("family is not a matroid: {0}")]
    NotMatroid(AxiomVerdict),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("attribute set is empty")]
    EmptyAttributeSet,
    #[error("table: {0}")]
    Table(String),
}
