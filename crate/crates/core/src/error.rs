use thiserror::Error;

/// Failure while reading the text polynomial grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid variable priority: {0}")]
    InvalidPriority(String),
    #[error("not an isolated singularity")]
    NotIsolated,
    #[error("germ does not vanish at the origin")]
    GermInvalid,
    #[error("standard basis needs at least one nonzero generator")]
    ZeroIdeal,
    #[error("bound exceeded: leading monomial of degree {degree} exceeds the bound {bound}")]
    BoundExceeded { degree: u32, bound: u32 },
    #[error("bound exceeded: a coefficient of {bits} bits exceeds the bound of {bound} bits")]
    CoefficientBoundExceeded { bits: u64, bound: u64 },
    #[error("oracle inconclusive: no stabilization below degree {cap}")]
    OracleInconclusive { cap: u32 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("action is trivial: no point outside the origin moves")]
    TrivialAction,
    #[error("germ is not invariant under the action")]
    NotInvariant,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("group order {0} is not prime")]
    NotPrimeOrder(u64),
    #[error("Milnor number {mu} exceeds the doubling cap {cap}")]
    DoublingCapExceeded { mu: usize, cap: usize },
    #[error("every character is nontrivial; nothing to reduce")]
    NoFixedCharacters,
    #[error("corpus entry `{name}`: expected mu {expected}, oracle gives {found}")]
    CorpusMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
