use thiserror::Error;

/// Every failure the library can report.
///
/// Variants carry the offending datum already rendered as text so that the
/// CLI can forward the message verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotSnowy: composition ({0}) has a repeated positive entry")]
    NotSnowy(String),

    #[error("OutOfRange: {0}")]
    OutOfRange(String),

    #[error("InvalidCode: {0}")]
    InvalidCode(String),

    #[error("NotInImage: ({0}) is not the rajcode of any snowy composition")]
    NotInImage(String),

    #[error("ZeroPolynomial: operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("NotInSpan: {0}")]
    NotInSpan(String),

    #[error("InvalidSubgrid: {0}")]
    InvalidSubgrid(String),

    #[error("InvalidInput: {0}")]
    InvalidInput(String),

    #[error("InvalidGrid: {0}")]
    InvalidGrid(String),

    /// A configured ceiling was exceeded. `limit` names the setting.
    #[error("ResourceLimit: {limit} = {max} exceeded ({detail})")]
    ResourceLimit {
        limit: &'static str,
        max: usize,
        detail: String,
    },

    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn resource(limit: &'static str, max: usize, detail: impl Into<String>) -> Self {
        Error::ResourceLimit {
            limit,
            max,
            detail: detail.into(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
