use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0}")]
    UnsupportedPrime(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("division by a non-unit series: {0}")]
    Division(String),

    #[error("series truncated below the certification bound ({order} < {bound})")]
    UnderTruncation { order: i64, bound: i64 },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("automorphism search failed: {0}")]
    SearchFailure(String),

    #[error("precision contexts differ ({0} vs {1} digits)")]
    ContextMismatch(u32, u32),

    #[error("precision exhausted: {0}")]
    Precision(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("field error: {0}")]
    Field(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("term budget exceeded: need {needed} terms, budget {budget}")]
    TermCount { needed: usize, budget: usize },

    #[error("[{stage}] {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn at_stage(self, stage: &'static str) -> Self {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage {
                stage,
                source: Box::new(e),
            },
        }
    }

    /// Stage tag, if the error was raised inside a pipeline stage.
    pub fn stage(&self) -> Option<&'static str> {
        match self {
            Error::Stage { stage, .. } => Some(stage),
            _ => None,
        }
    }

    /// The underlying error with any stage tag removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
