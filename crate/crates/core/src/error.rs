use thiserror::Error;

/// Every failure the library can report.
///
/// [`Error::is_parse`] separates malformed input from domain failures; the
/// command-line front end maps the former to exit status 2 and the latter to 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("divisor is not ample")]
    NotAmple,
    #[error(
        "divisor D_{ray} is not Q-Cartier, so the chosen base cone cannot give a Picard basis"
    )]
    ConditionFails { ray: usize },
    #[error("base cone index {0} is out of range or not full-dimensional")]
    BadBaseCone(usize),
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("fan is not complete")]
    NotComplete,
    #[error("ample cone has empty interior: the toric variety is not projective")]
    NonProjective,
    #[error("distinct candidates share the maximal norm: {0}")]
    InternalTie(String),
    #[error("stratum structure violated: {0}")]
    StructureViolation(String),
    #[error("slicing needs a Picard rank of 2 or 3, found {0}")]
    DimUnsupported(usize),
    #[error("{0} is not a state set")]
    NotStateSet(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for malformed input, false for well-formed input the theory rejects.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::DimensionMismatch { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
