use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),

    #[error("operation is undefined for the zero function")]
    ZeroFunction,

    #[error("vector field is not polynomial")]
    NotPolynomialField,

    #[error("vector field is not homogeneous of degree 2")]
    NotQuadraticField,

    #[error("f_{n} not stabilized at depth {depth}; depth {required} is required")]
    NotStabilized { n: usize, depth: usize, required: usize },

    #[error("coefficient size limit exceeded at layer {layer}")]
    CoefficientBlowup { layer: usize },

    #[error("pole of {0}")]
    Pole(String),

    #[error("argument outside the domain of {0}")]
    Domain(String),

    #[error("undefined evaluation: {0}")]
    Undefined(String),

    #[error("point is not on the curve (residual {0:e})")]
    OffCurve(f64),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("finite-field completion failed: {0}")]
    Completion(String),
}
