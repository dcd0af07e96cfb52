use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// printed as a single actionable line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("element id {id} out of range for group of order {order}")]
    ElementOutOfRange { id: u64, order: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("malformed group file: {0}")]
    GroupFile(String),
    #[error("{0}; use the generator-based action (`gl_generators`) instead")]
    Capacity(String),

    #[error("unparsable type string `{0}` (expected e.g. `2^6` or `2^4,3^2`)")]
    TypeSyntax(String),
    #[error("spherical system needs at least 2 entries, got {0}")]
    TooShort(usize),
    #[error("spherical systems cannot contain the identity")]
    IdentityEntry,
    #[error("entries do not generate the group")]
    NotGenerating,
    #[error("product of entries is not the identity")]
    ProductNotIdentity,
    #[error("spherical systems are not disjoint: their sigma sets share a non-identity element")]
    NotDisjoint,
    #[error("Riemann-Hurwitz genus {0} is not an integer")]
    GenusNotIntegral(String),
    #[error("genus {0} is below two")]
    GenusBelowTwo(String),
    #[error("ramification structures need at least 3 branch points per side, got {0}")]
    TooFewBranchPoints(usize),
    #[error("hurwitz move index {index} out of range for a tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("multiset enumeration requires an abelian group")]
    NonAbelianMultiset,

    #[error("budget exceeded: {what} needs more than {budget}")]
    BudgetExceeded { what: String, budget: u64 },

    #[error("invalid Chern input: {0}")]
    InvalidChern(String),
    #[error("degree {0} is not admissible (must be a positive multiple of 28)")]
    InadmissibleDegree(String),
    #[error("Chisini threshold undefined: denominator 2(3d+g-1)-c = {0} is not positive")]
    ThresholdUndefined(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
