use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not weighted homogeneous: {0}")]
    InhomogeneousPolynomial(String),
    #[error("factor {0} is not weighted homogeneous")]
    InhomogeneousFactor(String),
    #[error("product of the factors is {product}, expected {expected}")]
    ProductMismatch { product: String, expected: String },
    #[error("repeated factor {0}: the hypersurface is not normal")]
    RepeatedFactor(String),
    #[error("factor {0} is divisible by a variable without being one")]
    FactorDivisibleByVariable(String),
    #[error("factor {0} is not irreducible")]
    NotIrreducible(String),
    #[error("no factorization supplied for g = {0}")]
    MissingFactors(String),
    #[error(
        "gcd(deg g, n) = gcd({m}, {n}) = {gcd} != 1; the class group need not be finite \
         (z^3 - x1^3 - x2^3 - x3^3 over C has class group Z^6), which is outside the scope of this tool"
    )]
    GcdViolation { m: u64, n: u64, gcd: u64 },
    #[error("normality of the hypersurface could not be verified; pass assume_normal to attest it")]
    NormalityUnverified,
    #[error("the hypersurface is not normal: {0}")]
    NotNormal(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("index {index} out of range (expected 1..={len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("elements belong to different rings")]
    ContextMismatch,
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("negative exponent at position {0}")]
    NegativeExponent(usize),
    #[error("invalid job: {0}")]
    InvalidJob(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// Stable machine-readable code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateInput(_) => "DEGENERATE_INPUT",
            Error::ZeroPolynomial => "ZERO_POLYNOMIAL",
            Error::InhomogeneousPolynomial(_) => "INHOMOGENEOUS_POLYNOMIAL",
            Error::InhomogeneousFactor(_) => "INHOMOGENEOUS_FACTOR",
            Error::ProductMismatch { .. } => "PRODUCT_MISMATCH",
            Error::RepeatedFactor(_) => "REPEATED_FACTOR",
            Error::FactorDivisibleByVariable(_) => "FACTOR_DIVISIBLE_BY_VARIABLE",
            Error::NotIrreducible(_) => "NOT_IRREDUCIBLE",
            Error::MissingFactors(_) => "MISSING_FACTORS",
            Error::GcdViolation { .. } => "GCD_VIOLATION",
            Error::NormalityUnverified => "NORMALITY_UNVERIFIED",
            Error::NotNormal(_) => "NOT_NORMAL",
            Error::InvalidField(_) => "INVALID_FIELD",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::ContextMismatch => "CONTEXT_MISMATCH",
            Error::Overflow(_) => "OVERFLOW",
            Error::Syntax { .. } => "SYNTAX_ERROR",
            Error::UnknownVariable { .. } => "UNKNOWN_VARIABLE",
            Error::NegativeExponent(_) => "NEGATIVE_EXPONENT",
            Error::InvalidJob(_) => "INVALID_JOB",
            Error::InternalInconsistency(_) => "INTERNAL_INCONSISTENCY",
        }
    }

    /// Whether the error is a rejection of the mathematical input (as opposed
    /// to malformed input or a bug).
    pub fn is_hypothesis_rejection(&self) -> bool {
        matches!(
            self,
            Error::GcdViolation { .. }
                | Error::RepeatedFactor(_)
                | Error::NormalityUnverified
                | Error::NotNormal(_)
                | Error::NotIrreducible(_)
                | Error::ProductMismatch { .. }
                | Error::InhomogeneousFactor(_)
                | Error::InhomogeneousPolynomial(_)
                | Error::FactorDivisibleByVariable(_)
                | Error::MissingFactors(_)
        )
    }
}
