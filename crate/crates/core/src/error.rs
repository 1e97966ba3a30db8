//! Error types shared across the crate.
//!
//! [`Error`] covers domain failures (a construction that does not exist, an
//! index out of range); [`ParseError`] covers rejected input text. The
//! command-line front end maps the two onto distinct exit codes, so the
//! split is part of the public contract.

use num_bigint::BigUint;
use thiserror::Error;

/// Domain errors: the requested object does not exist or the arguments
/// violate a documented precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter that must be prime is not.
    #[error("{value} is not prime")]
    NotPrime { value: u64 },

    /// Division of a torsion angle by `factor` has no result of the same
    /// order because `factor` shares a divisor with the order.
    #[error("{factor} is not coprime to the torsion order {order}")]
    NotCoprime { factor: u64, order: BigUint },

    /// Extending a point backward failed: the bonding prime for the new
    /// level divides the torsion order, so no canonical lift exists there.
    #[error("no canonical lift at level {level}: bonding prime {prime} divides the torsion order {order}")]
    NotCoprimeAtLevel {
        level: usize,
        prime: u64,
        order: BigUint,
    },

    /// A preimage-component index was not in `0..sheets`.
    #[error("component index {index} out of range for a {sheets}-sheeted preimage")]
    IndexOutOfRange { index: BigUint, sheets: BigUint },

    /// Arc lengths must lie in (0, 1].
    #[error("arc length must lie in (0, 1], got {0}")]
    InvalidArcLength(String),

    /// Points over different prime sequences cannot be combined.
    #[error("points lie over different prime sequences")]
    MismatchedSpec,

    /// Points of different depths cannot be combined.
    #[error("points have different depths ({left} vs {right})")]
    MismatchedDepth { left: usize, right: usize },

    /// Bonding maps need levels 1 <= m <= n.
    #[error("bad bonding levels (m = {m}, n = {n}): need 1 <= m <= n")]
    BadIndices { m: usize, n: usize },

    /// A coordinate level outside 1..=depth.
    #[error("level {index} out of range for depth {depth}")]
    BadIndex { index: usize, depth: usize },

    /// The requested truncation depth cannot carry the construction.
    #[error("depth {depth} is too shallow, need at least {required}")]
    DepthTooShallow { depth: usize, required: usize },

    /// Adjacent coordinates fail the compatibility relation.
    #[error("coordinate at level {level} is not the bonding image of the coordinate below it")]
    IncompatibleCoordinates { level: usize },

    /// Points must have at least one coordinate.
    #[error("a truncated point needs depth at least 1")]
    ZeroDepth,

    /// The prime chosen for a periodic-witness construction cannot work.
    #[error("q = {q} is unusable: {reason}")]
    QNotUsable { q: u64, reason: String },

    /// A divisibility witness was requested for a value outside the group.
    #[error("{value} is not a member of the rational subgroup for this sequence")]
    NotMember { value: String },

    /// A cycle description must name at least one prime.
    #[error("cycle tails need at least one prime")]
    EmptyCycle,
}

/// Rejected input text, with the byte offset of the offending character.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },

    /// Sequence descriptions only accept primes; `token` is the literal
    /// rejected entry.
    #[error("'{token}' at byte {position} is not prime")]
    NotPrime { token: String, position: usize },
}

impl ParseError {
    pub(crate) fn syntax(position: usize, expected: impl Into<String>) -> Self {
        ParseError::Syntax {
            position,
            expected: expected.into(),
        }
    }
}
