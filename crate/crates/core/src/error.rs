use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid {rows}x{cols} with run length {k}: {reason}")]
    InvalidGrid {
        rows: usize,
        cols: usize,
        k: usize,
        reason: &'static str,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("edge index {index} out of range ({count} edges)")]
    EdgeOutOfRange { index: usize, count: usize },

    #[error("prefix length {t} out of range (hypergraph has {vertex_count} vertices)")]
    PrefixOutOfRange { t: usize, vertex_count: usize },

    #[error("colouring has {found} entries but the hypergraph has {expected} vertices")]
    SizeMismatch { expected: usize, found: usize },

    #[error("colour {color} at vertex {vertex} is not below the colour count {colors}")]
    ColorOutOfRange {
        vertex: usize,
        color: u32,
        colors: u32,
    },

    #[error("{colors} colour(s) cannot avoid monochromatic edges; at least 2 are required")]
    TooFewColors { colors: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sampler exceeded its budget of {budget} resampling steps{}", level_suffix(*.level))]
    SamplerBudgetExceeded { budget: u64, level: Option<usize> },

    #[error("exhaustive enumeration needs {required} evaluations, over the budget of {budget}")]
    OracleBudgetExceeded { required: String, budget: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn level_suffix(level: Option<usize>) -> String {
    match level {
        Some(t) => format!(" at level {t}"),
        None => String::new(),
    }
}

impl Error {
    /// Process exit status: 2 invalid configuration, 3 sampler budget,
    /// 4 oracle budget, 1 anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::SamplerBudgetExceeded { .. } => 3,
            Error::OracleBudgetExceeded { .. } => 4,
            Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
