use thiserror::Error;

/// Errors raised by the constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("truncation bound exceeded: {0}")]
    TruncationExceeded(String),

    #[error("cosimplicial identities fail: {0}")]
    NotCosimplicial(String),

    #[error("partial-shift axioms fail: {0}")]
    NotPartialShifts(String),

    #[error("colimit injection mu_{level} is not monic: {left} and {right} collide")]
    NotMonic {
        level: usize,
        left: String,
        right: String,
    },

    #[error("exchange law fails for i={i}, j={j} at {element}")]
    ExchangeLaw { i: usize, j: usize, element: String },

    #[error("element {0} lies outside every fixed-point level")]
    OutsideFiltration(String),

    #[error("braid relation {relation} fails for generators ({i}, {j}) at {element}")]
    BraidRelation {
        relation: &'static str,
        i: usize,
        j: usize,
        element: String,
    },

    #[error("level closure fails: coface {k} at level {n} sends {element} to level {level}")]
    LevelClosure {
        k: usize,
        n: usize,
        element: String,
        level: isize,
    },

    #[error("action declares no stabilization bound")]
    NoStabilizationBound,

    #[error("not a set-theoretic Yang-Baxter solution")]
    NotYangBaxter,

    #[error("state not invariant under coface {k} at level {n}: {element}")]
    StateNotInvariant { k: usize, n: usize, element: String },

    #[error("odd residual power of the loop parameter: {0}")]
    OddDeltaPower(String),

    #[error("not a *-distribution: {0}")]
    NotStarDistribution(String),

    #[error("star structure unavailable: {0}")]
    StarUnavailable(String),

    #[error("broken cochain complex: {0}")]
    BrokenComplex(String),

    #[error("oracle evaluation failed on {word}: {reason}")]
    Oracle { word: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
