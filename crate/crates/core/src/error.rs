use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Every comparison in this crate is made "at precision": values live in
/// `Z/p^N`, so an error such as [`Error::PrecisionExhausted`] means the
/// answer is not determined by the digits that are available.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different contexts ({left} vs {right})")]
    ContextMismatch { left: String, right: String },

    #[error("denominator {0} is divisible by p; the coefficient is not p-integral")]
    DenominatorDivisibleByP(i64),

    #[error("{0} is not a unit")]
    NotAUnit(u64),

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("span is not contained in the given superspan")]
    NotContained,

    #[error("series does not converge at this precision: {0}")]
    ConvergenceViolated(String),

    #[error("matrix is not a pro-p element: {0}")]
    NotProP(String),

    #[error("structure constants are not antisymmetric at (i={i}, j={j}, k={k})")]
    AntisymmetryViolated { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolated(usize, usize, usize),

    #[error("span is not closed under the bracket")]
    NotASublattice,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("nilpotency class is at least {class}, not below p = {p}")]
    ClassTooLarge { class: usize, p: u64 },

    #[error("Lie operations from the two routes disagree: {0}")]
    CrossCheckMismatch(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("closure did not stabilise within {0} rounds")]
    ClosureBudget(usize),

    #[error("enumeration too large: {0}")]
    ScaleTooLarge(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("action matrix A does not satisfy A^2 = 0 mod p")]
    ResidualNilpotenceViolated,

    #[error("lattice is not soluble at this precision")]
    NotSoluble,

    #[error("expected a 3-dimensional lattice, got dimension {0}")]
    NotDim3(usize),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
