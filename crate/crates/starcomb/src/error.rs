use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bitstring of length {len} has weight {weight}, expected one of {expected:?}")]
    InvalidWeight {
        len: usize,
        weight: usize,
        expected: [usize; 2],
    },
    #[error("operation undefined on the empty tree")]
    EmptyTree,
    #[error("tree {0} is not pullable (expected the form 110u0v)")]
    NotPullable(String),
    #[error("tree {0} is not pushable (expected the form 101u0v)")]
    NotPushable(String),
    #[error("the pair (s_n, s_n') is not a gluing pair")]
    ForbiddenPair,
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("flip sequence does not return to the starting necklace")]
    NotPeriodic,
    #[error("flip sequence leaves the middle levels at step {0}")]
    WeightViolation(usize),
    #[error("paths do not expose the gluing-cycle prefixes")]
    PrefixMismatch,
    #[error("gluing pairs violate the classifier preconditions")]
    PreconditionViolated,
    #[error("switch parameters out of range: {0}")]
    OutOfRange(String),
    #[error("n = {0} is handled by hardcoded sequences, not by this construction")]
    SmallN(usize),
    #[error("the star has no outgoing arc")]
    IsStar,
    #[error("shift {shift} is not coprime to {modulus}")]
    NotCoprime { shift: usize, modulus: usize },
    #[error("invalid start combination: {0}")]
    BadStart(String),
    #[error("vertex id {id} out of range for a tree with {vertices} vertices")]
    VertexOutOfRange { id: usize, vertices: usize },
    #[error("invalid bit character {0:?}")]
    BadBitChar(char),
    #[error("bitstring {0} is not a Dyck word")]
    NotDyck(String),
}
