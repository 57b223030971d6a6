use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground size {0} outside 1..=64")]
    BadGround(u32),
    #[error("set {mask:#x} has an element outside the ground set of size {ground}")]
    MaskOverflow { mask: u64, ground: u8 },
    #[error("set {0:#x} supplied twice")]
    DuplicateSet(u64),
    #[error("family is empty")]
    EmptyFamily,
    #[error("family is not union-closed")]
    NotUnionClosed,
    #[error("family is not intersection-closed")]
    NotIntersectionClosed,
    #[error("family contains the empty set")]
    ContainsEmptySet,
    #[error("the family {{∅}} is not a valid input here")]
    IllegalInput,
    #[error("set is already present in the family")]
    AlreadyPresent,
    #[error("adding the set breaks union-closure")]
    NotClosedAfterAdd,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("marked set {0:#x} does not fit the ground set")]
    BadMarkedSet(u64),
    #[error("marked set {0:#x} is not a crew (six heavy elements)")]
    NotACrew(u64),
    #[error("no threshold found up to {0}")]
    NotFound(u32),
    #[error("bound {0} is outside the exhaustive feasibility range")]
    InfeasibleBound(u8),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
