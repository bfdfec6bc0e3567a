use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("presentation is not finite-dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a module map: {0}")]
    InvalidMap(String),
    #[error("not a complex: {0}")]
    InvalidComplex(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("resolution of length > {0} needed")]
    ResolutionTooLong(usize),
    #[error("subcategory is not admissible: {0}")]
    NotAdmissible(String),
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("homotopy solve failed: {0}")]
    HomotopySolveFailed(String),
    #[error("algebra is not commutative: {0}")]
    NotCommutative(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
