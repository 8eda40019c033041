//! Error type shared by all modules.

/// Everything that can go wrong in the library.
///
/// `ComponentSumMismatch` and `InternalCheck` flag a broken internal
/// consistency assertion rather than bad input; callers should surface
/// them loudly (the CLI maps them to a distinct exit code).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty subobject")]
    EmptySubobject,
    #[error("atom index {0} out of range")]
    AtomIndexOutOfRange(usize),
    #[error("exterior power requires line atoms")]
    ExteriorPowerRequiresLineAtoms,
    #[error("exterior power index s = {s} out of range 0 < s < {rank}")]
    ExteriorPowerOutOfRange { s: i64, rank: i64 },
    #[error("pullback degree must be a positive integer, got {0}")]
    PullbackDegree(i64),
    #[error("a genus-0 curve has no connected etale cover of degree {0}")]
    NoEtaleCover(i64),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("ambient mismatch: P(E) with (rank, deg) = ({left_rank}, {left_deg}) vs ({right_rank}, {right_deg})")]
    AmbientMismatch {
        left_rank: i64,
        left_deg: i64,
        right_rank: i64,
        right_deg: i64,
    },
    #[error(
        "ambient ranks inconsistent: pushforward needs source rank {small} < target rank {big}"
    )]
    PushforwardRanks { small: i64, big: i64 },
    #[error("ambient rank must be at least 1, got {0}")]
    NonpositiveAmbientRank(i64),
    #[error("quotient rank q = {q} out of range 0 < q < {rank}")]
    QuotientRankOutOfRange { q: i64, rank: i64 },
    #[error("negative torsion degree {0}")]
    NegativeTorsion(i64),
    #[error("not in closed-cone coordinates: a and b must be nonnegative")]
    NotInConeCoordinates,
    #[error("kernel not phi-invariant: an arrow leaves the subset {{{0}}}")]
    KernelNotPhiInvariant(String),
    #[error("class formulas require chain shape: {0}")]
    ChainShapeRequired(String),
    #[error("non-nilpotent support: {0}")]
    NonNilpotentSupport(String),
    #[error("rank {0} out of the supported range {1}..={2}")]
    RankOutOfRange(i64, i64, i64),
    #[error("need rank at least {min}, got {got}")]
    RankTooSmall { got: i64, min: i64 },
    #[error("cannot parse rational '{0}'")]
    BadRational(String),
    #[error("class mismatch: total {total} differs from component sum {component_sum}")]
    ComponentSumMismatch {
        total: String,
        component_sum: String,
    },
    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
}

impl Error {
    /// True for errors that indicate a bug in the library rather than bad
    /// input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::ComponentSumMismatch { .. } | Error::InternalCheck(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
