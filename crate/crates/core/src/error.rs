use thiserror::Error;

use crate::carrier::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {value} is outside the carrier 0..{k}")]
    ArgOutOfRange { value: Element, k: usize },
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("arity {0} is below the minimum of 2")]
    ArityTooSmall(usize),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("carrier sizes differ: {0} vs {1}")]
    CarrierMismatch(usize, usize),
    #[error("table has {found} entries, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("position {position} out of range 1..={max}")]
    PositionOutOfRange { position: usize, max: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("intersection of the family is empty")]
    EmptyIntersection,
    #[error("carrier of size {k} is too large for exhaustive {what} (limit {limit})")]
    CarrierTooLarge { k: usize, limit: usize, what: &'static str },
    #[error("{0} is not a g-identity")]
    NotGIdentity(Element),
    #[error("{0} is not invertible")]
    NotAUnit(Element),
    #[error("{0}")]
    DomainMismatch(String),
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("homomorphism is not surjective")]
    NotEpimorphism,
    #[error("subset is not an ideal")]
    NotIdeal,
    #[error("subset is not a subseminearring")]
    NotSubseminearring,
    #[error("partition is not a congruence")]
    NotCongruence,
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("search space {size} exceeds the guard {limit}; pass a limit")]
    SearchSpaceTooLarge { size: u128, limit: u128 },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: entry {value} out of range for carrier {k}")]
    EntryOutOfRange { line: usize, column: usize, value: u64, k: usize },
    #[error("operation {op} has {found} entries, expected {expected}")]
    WrongEntryCount { op: char, expected: usize, found: usize },
}
