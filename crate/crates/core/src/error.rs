use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring needs at least one component")]
    EmptyRing,
    #[error("zero or trivial component ring: modulus {0} < 2")]
    TrivialComponent(u64),
    #[error("ring of order {0} does not fit the element index type")]
    RingOverflow(u128),
    #[error("arity mismatch: expected {expected} components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("residue {residue} out of range for modulus {modulus}")]
    Residue { residue: u64, modulus: u64 },
    #[error("generator {generator} does not divide modulus {modulus}")]
    NotADivisor { generator: u64, modulus: u64 },
    #[error("objects live over different rings: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("quotient is the zero ring")]
    ZeroQuotient,
    #[error("zero cyclic factor")]
    ZeroFactor,
    #[error("zero module excluded")]
    ZeroModule,
    #[error("instance too large: {size} elements exceeds the limit of {limit}")]
    TooLarge { size: u128, limit: usize },
    #[error("submodules belong to different parent modules")]
    ParentMismatch,
    #[error("element {0} is not in the module")]
    NoSuchElement(u64),
    #[error("{0} is not a prime ideal")]
    NotPrime(String),
    #[error("not a topology: {0}")]
    Topology(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("point set is not closed")]
    NotClosed,
    #[error("ideal {ideal} does not contain Ann(M) = {annihilator}")]
    BelowAnnihilator { ideal: String, annihilator: String },
    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("homomorphism is not injective: {0}")]
    NotInjective(String),
    #[error("submodule {0} is not contained in the image of the map")]
    NotInImage(String),
    #[error("submodule {0} is not a point of the secondary-like spectrum")]
    NotInSpectrum(String),
    #[error("unknown result id {id:?}; valid ids: {valid}")]
    UnknownResult { id: String, valid: String },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}
