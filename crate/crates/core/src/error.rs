use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not an automorphism: determinant is {det}, expected +1 or -1")]
    NotAutomorphism { det: String },

    #[error("determinant is {det}, expected 1")]
    DeterminantNotOne { det: String },

    #[error("not an involution")]
    NotInvolution,

    #[error("involution is diagonalizable; no witness exists")]
    Diagonalizable,

    #[error("involution is a 1-permutation; no witness exists")]
    OnePermutation,

    #[error("rank too small: need n >= {needed}, found n = {found}")]
    RankTooSmall { needed: usize, found: usize },

    #[error("vector is not primitive")]
    NotPrimitive,

    #[error("functional does not vanish on the direction vector")]
    FunctionalNotVanishing,

    #[error("functional is zero")]
    ZeroFunctional,

    #[error("not a transvection")]
    NotTransvection,

    #[error("not an extremal involution")]
    NotExtremal,

    #[error("involutions must be distinct")]
    NotDistinct,

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("entries are not coprime: gcd({a}, {c}) = {gcd}")]
    NotCoprime { a: String, c: String, gcd: String },

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("matrix is singular over GF(2)")]
    SingularMod2,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown suite id `{0}`")]
    UnknownSuite(String),

    #[error("n = {n} out of range for suite {suite} (valid: {window})")]
    RankOutOfRange {
        suite: &'static str,
        n: usize,
        window: &'static str,
    },

    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
