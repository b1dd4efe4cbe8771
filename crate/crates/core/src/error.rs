use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("elimination over Z/{modulus} hit a column with no unit pivot (modulus is not a field)")]
    NonFieldModulus { modulus: u64 },

    #[error("elimination hit a column whose nonzero entries are all non-units")]
    NoUnitPivot,

    #[error("mixed moduli {0} and {1}")]
    ModulusMismatch(u64, u64),

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is singular over its scalar ring")]
    Singular,

    #[error("image of {0} is not invertible")]
    SingularImage(String),

    #[error("no image supplied for generator {0}")]
    MissingImage(String),

    #[error("group-type condition fails at (i, j, k) = ({i}, {j}, {k})")]
    GroupTypeViolation { i: usize, j: usize, k: usize },

    #[error("operator is not of {0} group type")]
    NotGroupType(&'static str),

    #[error("matrix is not row-stochastic")]
    NotStochastic,

    #[error("closure exceeded the cap after {count} elements")]
    CapExceeded { count: usize },

    #[error("refusing to assemble a {rows}-row matrix; use charge blocks")]
    TooLarge { rows: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division is not exact in the Laurent ring")]
    InexactDivision,

    #[error("element is not idempotent up to the expected scalar")]
    NotIdempotent,

    #[error("restriction left {residual} dimensions unassigned")]
    IncompleteMatch { residual: usize },

    #[error("algebra span exceeded d^2 = {limit}")]
    DimensionBlowup { limit: usize },

    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
}
