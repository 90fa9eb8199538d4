use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant has a stable
/// machine-readable code (see [`Error::code`]) that the CLI prints.
#[derive(Debug, Error)]
pub enum Error {
    #[error("the zero form (0, 0, 0) is not allowed")]
    ZeroForm,
    #[error("form has discriminant 0")]
    ZeroDiscriminant,
    #[error("{0} is not a discriminant (must be nonzero and congruent to 0 or 1 mod 4)")]
    NotADiscriminant(BigInt),
    #[error("{0} is not congruent to 1 mod 4")]
    NotOneMod4(BigInt),
    #[error("discriminants differ: {0} vs {1}")]
    MismatchedDiscriminant(BigInt, BigInt),
    #[error("contents {0} and {1} are not coprime")]
    NotCoprimeContent(BigInt, BigInt),
    #[error("form or class is not primitive (content {0})")]
    NotPrimitive(BigInt),
    #[error("discriminant {0} is not a positive square")]
    NotSquareDiscriminant(BigInt),
    #[error("residue {0} is not a unit modulo {1}")]
    NotCoprimeResidue(BigInt, BigInt),
    #[error("{0} must be a positive integer")]
    NotPositive(BigInt),
    #[error("{0} must be an odd positive integer")]
    NotOddPositive(BigInt),
    #[error("{0} must be negative")]
    NotNegative(BigInt),
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(BigInt),
    #[error("matrix is not in the Gross lattice (traceless with even off-diagonal entries)")]
    NotGross,
    #[error("vectors do not span a rank-2 direct summand of Z^4")]
    NotASummand,
    #[error("Klein vectors are not pair-primitive")]
    NotPairPrimitive,
    #[error("Klein vectors have different determinants: {0} vs {1}")]
    MismatchedDeterminant(BigInt, BigInt),
    #[error("Klein vectors have determinant 0")]
    ZeroDeterminant,
    #[error("plane is not symplectic")]
    NotSymplectic,
    #[error("cube has no slicing pair with coprime contents")]
    NoCoprimePair,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(BigInt, BigInt),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroForm => "ZERO_FORM",
            Error::ZeroDiscriminant => "ZERO_DISCRIMINANT",
            Error::NotADiscriminant(_) => "NOT_A_DISCRIMINANT",
            Error::NotOneMod4(_) => "NOT_ONE_MOD_4",
            Error::MismatchedDiscriminant(..) => "MISMATCHED_DISCRIMINANT",
            Error::NotCoprimeContent(..) => "NOT_COPRIME_CONTENT",
            Error::NotPrimitive(_) => "NOT_PRIMITIVE",
            Error::NotSquareDiscriminant(_) => "NOT_SQUARE_DISCRIMINANT",
            Error::NotCoprimeResidue(..) => "NOT_COPRIME_RESIDUE",
            Error::NotPositive(_) => "NOT_POSITIVE",
            Error::NotOddPositive(_) => "NOT_ODD_POSITIVE",
            Error::NotNegative(_) => "NOT_NEGATIVE",
            Error::NotUnimodular(_) => "NOT_UNIMODULAR",
            Error::NotGross => "NOT_GROSS",
            Error::NotASummand => "NOT_A_SUMMAND",
            Error::NotPairPrimitive => "NOT_PAIR_PRIMITIVE",
            Error::MismatchedDeterminant(..) => "MISMATCHED_DETERMINANT",
            Error::ZeroDeterminant => "ZERO_DETERMINANT",
            Error::NotSymplectic => "NOT_SYMPLECTIC",
            Error::NoCoprimePair => "NO_COPRIME_PAIR",
            Error::NotCoprime(..) => "NOT_COPRIME",
            Error::OutOfRange(_) => "OUT_OF_RANGE",
            Error::Json(_) => "JSON",
            Error::Io(_) => "IO",
        }
    }
}
