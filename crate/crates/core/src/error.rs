use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable
/// machine-readable code through [`Error::code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational `{text}`: {reason}")]
    Rational { text: String, reason: &'static str },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("cantor depth {0} overflows exact arithmetic")]
    DepthOverflow(u32),

    #[error("distance to the empty set is undefined")]
    EmptySet,

    #[error("point {0} is not inside the unit disc")]
    NotInterior(Complex64),

    #[error("not log-integrable at this resolution: {0}")]
    NotLogIntegrable(String),

    #[error("negative weight {value:e} at node {node}")]
    NegativeWeight { node: usize, value: f64 },

    #[error("singular part not representable for {0} maps")]
    SingularPartUnknown(&'static str),

    #[error("locally extreme on the arc: {0}")]
    LocallyExtreme(String),

    #[error("not a holomorphic self-map of the disc: {0}")]
    NotSelfMap(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// I/O error that names the file involved.
    pub(crate) fn io_at(path: &std::path::Path, e: std::io::Error) -> Self {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    }

    pub fn code(&self) -> &'static str {
        match self {
            Error::Rational { .. } => "invalid_rational",
            Error::Validation(_) => "validation",
            Error::DepthOverflow(_) => "depth_overflow",
            Error::EmptySet => "empty_set",
            Error::NotInterior(_) => "not_interior",
            Error::NotLogIntegrable(_) => "not_log_integrable",
            Error::NegativeWeight { .. } => "negative_weight",
            Error::SingularPartUnknown(_) => "singular_part_unknown",
            Error::LocallyExtreme(_) => "locally_extreme",
            Error::NotSelfMap(_) => "not_self_map",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
