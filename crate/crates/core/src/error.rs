use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// [`Error::kind`] gives a stable machine-readable name; the CLI reports it
/// alongside the message.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("incompatible fields: Q(sqrt({0})) and Q(sqrt({1}))")]
    IncompatibleField(i64, i64),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{symbol}` at position {pos}")]
    UnknownSymbol { pos: usize, symbol: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("pole: z lies within {distance:e} of the lattice point {m} + {n}*tau")]
    Pole { m: i64, n: i64, distance: f64 },
    #[error("singular curve: {0}")]
    Singular(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("invalid Sklyanin parameters: |alpha+beta+gamma+alpha*beta*gamma| = {0:e}")]
    InvalidSklyanin(f64),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("outside theorem scope: {0}")]
    OutOfScope(String),
    #[error("not in domain: {0}")]
    NotInDomain(String),
    #[error("inexact input refused: {0}")]
    Refused(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::Domain(_) => "domain",
            Error::IncompatibleField(..) => "incompatible-field",
            Error::Resource(_) => "resource",
            Error::Syntax { .. } => "syntax",
            Error::UnknownSymbol { .. } => "unknown-symbol",
            Error::Parameter(_) => "parameter",
            Error::Pole { .. } => "pole",
            Error::Singular(_) => "singular-curve",
            Error::Degenerate(_) => "degenerate",
            Error::InvalidSklyanin(_) => "invalid-sklyanin-parameters",
            Error::Contract(_) => "contract",
            Error::OutOfScope(_) => "out-of-theorem-scope",
            Error::NotInDomain(_) => "not-in-domain",
            Error::Refused(_) => "refused",
        }
    }

    /// True for errors caused by malformed input text rather than by math.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::UnknownSymbol { .. })
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
