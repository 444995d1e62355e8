use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,

    #[error("{op} needs at least n + 3 points (n = {n}, s = {s})")]
    TooFewPoints { op: &'static str, n: u32, s: usize },

    #[error("{op} needs at most n + 2 points (n = {n}, s = {s})")]
    TooManyPoints { op: &'static str, n: u32, s: usize },

    #[error("{op} is only defined for n = {expected} (got n = {n})")]
    WrongDimension {
        op: &'static str,
        expected: u32,
        n: u32,
    },

    #[error("{0}")]
    Precondition(String),

    #[error("conditions matrix is {rows}x{cols}, above the cap of {cap} cells")]
    MatrixTooLarge {
        rows: usize,
        cols: usize,
        cap: usize,
    },

    #[error("restriction recursion exceeded depth {0}")]
    DepthExceeded(usize),

    #[error("planar reduction inconsistency: {0}")]
    PlanarInconsistency(String),

    #[error(transparent)]
    Parse(#[from] crate::parse::ParseError),
}

impl Error {
    /// The request lies outside an evaluator's domain or a size limit, as
    /// opposed to bad input or an internal inconsistency.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::TooFewPoints { .. }
                | Error::TooManyPoints { .. }
                | Error::WrongDimension { .. }
                | Error::MatrixTooLarge { .. }
                | Error::DepthExceeded(_)
        )
    }
}
