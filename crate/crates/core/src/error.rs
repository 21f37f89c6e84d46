use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {modulus:?} is reducible over F_{p}: divisible by {factor:?}")]
    Reducible {
        p: u32,
        modulus: Vec<u32>,
        factor: Vec<u32>,
    },
    #[error("field of order {order} exceeds the supported bound {bound}")]
    FieldTooLarge { order: u64, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    ZeroArgument,
    #[error("{what}: size {size} exceeds bound {bound}")]
    DomainTooLarge { what: String, size: u64, bound: u64 },
    #[error("{what}: size {size} exceeds bound {bound}")]
    TooLarge { what: String, size: u64, bound: u64 },
    #[error("element is not a power of the given base")]
    NotInSubgroup,
    #[error("characteristic mismatch: {0} vs {1}")]
    CharMismatch(u32, u32),
    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("radical is nonzero ({0} elements)")]
    NonzeroRadical(usize),
    #[error("map is not quadratic over the prime field: {0}")]
    NotFQuadratic(String),
    #[error("map failed verification: {0}")]
    NotVerified(String),
    #[error("quotient algebra has unexpected dimension {0}")]
    UnexpectedDimension(usize),
    #[error("{0} factors exceeds the limit of 6")]
    TooManyFactors(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case name of the variant, for machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::Reducible { .. } => "reducible",
            Error::FieldTooLarge { .. } => "field_too_large",
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroArgument => "zero_argument",
            Error::DomainTooLarge { .. } => "domain_too_large",
            Error::TooLarge { .. } => "too_large",
            Error::NotInSubgroup => "not_in_subgroup",
            Error::CharMismatch(..) => "char_mismatch",
            Error::AxiomViolation(_) => "axiom_violation",
            Error::NotAnIdeal(_) => "not_an_ideal",
            Error::NonzeroRadical(_) => "nonzero_radical",
            Error::NotFQuadratic(_) => "not_f_quadratic",
            Error::NotVerified(_) => "not_verified",
            Error::UnexpectedDimension(_) => "unexpected_dimension",
            Error::TooManyFactors(_) => "too_many_factors",
            Error::Inconsistency(_) => "inconsistency",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
