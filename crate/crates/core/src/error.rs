use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: antecedent after reply ({parent} > {child})")]
    AntecedentAfterReply {
        line: usize,
        parent: usize,
        child: usize,
    },

    #[error("line {line}: message index {index} out of range for {n} messages")]
    IndexOutOfRange { line: usize, index: usize, n: usize },

    #[error("invalid edge ({parent}, {child}) for graph over {n} messages")]
    InvalidEdge {
        parent: usize,
        child: usize,
        n: usize,
    },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("embedding file line {line}: expected dimension {expected}, found {found}")]
    EmbeddingDimension {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("embedding file is empty")]
    EmptyEmbeddings,

    #[error("candidate {candidate} comes after message {message}")]
    CandidateAfterMessage { candidate: usize, message: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("no training data")]
    EmptyTrainingData,

    #[error("non-finite loss in epoch {epoch}")]
    NonFiniteLoss { epoch: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("model file line {line}: {message}")]
    ModelFormat { line: usize, message: String },

    #[error("{0}")]
    Metric(String),

    #[error("{}: {error}", path.display())]
    File { path: std::path::PathBuf, error: Box<Error> },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Attaches the file a nested error came from.
    pub fn in_file(self, path: impl Into<std::path::PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            error: Box::new(self),
        }
    }
}
