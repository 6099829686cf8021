use thiserror::Error;

/// Failure while turning DSL text into an [`Expr`](crate::expr::Expr) or model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("undeclared variable `{name}` at byte {offset}")]
    UndeclaredVariable { name: String, offset: usize },
    #[error("expected {expected} components, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("invalid domain: {0}")]
    Domain(String),
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UndeclaredVariable { offset, .. } => {
                Some(*offset)
            }
            _ => None,
        }
    }
}

/// Evaluation left the domain of an elementary function.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error in `{subexpr}`: {reason}")]
pub struct DomainError {
    pub subexpr: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("curve has zero speed at t = {t}")]
    ZeroSpeed { t: f64 },
    #[error("curvature vanishes at t = {t}; Frenet frame undefined")]
    ZeroCurvature { t: f64 },
    #[error("surface is irregular at (u, v) = ({u}, {v})")]
    IrregularSurface { u: f64, v: f64 },
    #[error("direction ({du}, {dv}) is asymptotic at (u, v) = ({u}, {v})")]
    AsymptoticDirection { u: f64, v: f64, du: f64, dv: f64 },
    #[error("value {value} out of range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("geodesic left the parameter domain at (u, v) = ({u}, {v}) after length {s}")]
    LeftDomain { u: f64, v: f64, s: f64 },
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
