use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("divisor is not a monomial: {0}")]
    NonMonomialDivisor(String),

    #[error("division is not exact over the integers: {0}")]
    InexactDivision(String),

    #[error("polynomials are defined over different variable sets")]
    VariableMismatch,

    #[error("variable `{0}` occurs with a negative exponent but is assigned zero")]
    ZeroAtNegativeExponent(String),

    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("not an alternating sign matrix: {rule} violated at {location}")]
    NotAsm { rule: String, location: String },

    #[error("invalid six-vertex grid: {0}")]
    InvalidGrid(String),

    #[error("enumeration cap exceeded: n = {n} > cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("zero denominator at {0}")]
    ZeroDivision(String),

    #[error("coefficient {which}_{index} lies outside the stored window")]
    WindowMiss { which: &'static str, index: i64 },

    #[error("coefficient window too small: missing {which}_{index}")]
    WindowTooSmall { which: &'static str, index: i64 },

    #[error("zero face label a_({0},{1})")]
    ZeroFaceLabel(usize, usize),

    #[error("entry a_({0},{1}) is zero where the ASM has a -1")]
    ZeroEntryAtMinus(usize, usize),

    #[error("mismatch at {location}: {left} != {right}")]
    Mismatch {
        location: String,
        left: String,
        right: String,
    },

    #[error("scheduled mutations interact: {0}")]
    OrderDependence(String),

    #[error("unclassifiable triangle at cell ({0},{1})")]
    UnclassifiableTriangle(usize, usize),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
