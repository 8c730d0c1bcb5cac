use thiserror::Error;

/// Errors raised by group construction, lattice building and the measure engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("groups do not match: {0}")]
    GroupMismatch(String),
    #[error("sigma tuple is empty")]
    EmptySigma,
    #[error("images of sigma do not generate the quotient G/N")]
    SigmaDoesNotGenerate,
    #[error("base subgroup does not surject onto the quotient G/N")]
    BaseNotRegular,
    #[error("element {0} lies outside the base subgroup")]
    ElementNotInBase(usize),
    #[error("invalid lift: {0}")]
    InvalidLift(String),
    #[error("subgroup is not a member of the lattice")]
    NotAMember,
    #[error("tower invariant violated: {0}")]
    Tower(String),
    #[error("linear system is singular")]
    Singular,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
