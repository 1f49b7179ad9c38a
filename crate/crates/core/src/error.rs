use alloc::string::String;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("precision must be at least one digit")]
    ZeroPrecision,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least one")]
    ConstantPolynomial,
    #[error("not an Eisenstein polynomial: coefficient {index} violates the valuation condition")]
    NotEisenstein { index: usize },
    #[error("operands live in different extensions")]
    MixedExtensions,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("element is not a unit")]
    NonUnit,
    #[error("element is not divisible by the requested power of the uniformizer")]
    NotDivisible,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("polynomial has a repeated root")]
    UnsupportedMultipleRoot,
    #[error("extension is not Galois: {root_count} of {degree} conjugates found")]
    NotGalois { root_count: usize, degree: usize },
    #[error("counterexample not constructible: {0}")]
    NotConstructible(String),
    #[error("upper ramification break {0} is not an integer")]
    NonIntegerBreak(String),
    #[error("residue class {c} does not give a unit in the required layer")]
    BadUnitClass { c: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::InsufficientPrecision(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroPrecision => "ZeroPrecision",
            Error::NotMonic => "NotMonic",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NotEisenstein { .. } => "NotEisenstein",
            Error::MixedExtensions => "MixedExtensions",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::PrimeMismatch { .. } => "PrimeMismatch",
            Error::NonUnit => "NonUnit",
            Error::NotDivisible => "NotDivisible",
            Error::InsufficientPrecision(_) => "InsufficientPrecision",
            Error::UnsupportedMultipleRoot => "UnsupportedMultipleRoot",
            Error::NotGalois { .. } => "NotGalois",
            Error::NotConstructible(_) => "NotConstructible",
            Error::NonIntegerBreak(_) => "NonIntegerBreak",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::BadUnitClass { .. } => "BadUnitClass",
            Error::Inconsistent(_) => "Inconsistent",
        }
    }
}
