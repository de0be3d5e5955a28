use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division is not exact over the integers")]
    NonExactDivision,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },

    #[error("coefficient height exceeds the supported bound 10^12")]
    HeightBoundExceeded,

    #[error("root refinement stalled before reaching the requested tolerance")]
    ToleranceNotReached,

    #[error("entries {0} and {1} cannot be ordered within the refinement budget")]
    IncomparableEntries(usize, usize),

    #[error("entry {0} is zero")]
    ZeroEntry(usize),

    #[error("no nondegenerate invariant antisymmetric form exists")]
    NoForm,

    #[error("indecomposability violated: {0}")]
    IndecomposabilityViolated(String),

    #[error("exact multiplication requested for a non-exact rotation")]
    InexactPath,

    #[error("elements belong to different models")]
    ModelMismatch,

    #[error("not in lattice: {0}")]
    NotInLattice(String),

    #[error("closure violated by word {word:?}")]
    ClosureViolation { word: Vec<i64> },

    #[error("not a Salem polynomial: {0}")]
    NotSalem(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("undetermined: {0}")]
    Undetermined(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
