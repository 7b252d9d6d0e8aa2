use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("order violation: {0}")]
    Order(String),
    #[error("duplicate entry {0}")]
    DuplicateEntry(u32),
    #[error("cannot extend first row: {0}")]
    NotExtendable(String),
    #[error("set not closed under promotion; witness {witness}")]
    NotClosed { witness: String },
    #[error("not a two-row tableau of shape λ[n]")]
    NotTwoRow,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("track {track} too short: n_i = {track_len} < 2 r_i l_i = {needed}")]
    TrackCapacity { track: usize, track_len: i64, needed: i64 },
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polynomial division is not exact")]
    NonExactDivision,
    #[error("residue modulo the {0}-th cyclotomic polynomial is not constant")]
    NonConstantResidue(u64),
    #[error("tableau is not generic for n = {0}")]
    NotGeneric(u32),
    #[error("not a near-hook tableau")]
    NotNearHook,
    #[error("near-hook profile is not mixed (needs r >= 1 and s >= 1)")]
    NotMixed,
    #[error("invalid gap sequences: {0}")]
    InvalidGaps(String),
    #[error("size {size} exceeds enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("unknown theorem id '{0}'")]
    UnknownTheorem(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
