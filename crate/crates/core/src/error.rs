use thiserror::Error;

/// Configuration and construction errors.
///
/// Semantic outcomes of a check (a refuted law, a non-word value) are never
/// errors; they are reported through [`crate::checkers::CheckVerdict`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet has no letters")]
    EmptyAlphabet,

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),

    #[error("invalid symbol token `{0}`")]
    InvalidSymbol(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("numeric samples must be strictly increasing (offending value `{0}`)")]
    UnsortedSamples(String),

    #[error("invalid rational `{0}`")]
    BadRational(String),

    #[error("invalid case map: {0}")]
    BadCaseMap(String),

    #[error("cannot parse word `{0}`")]
    BadWord(String),

    #[error("unknown catalogue key `{0}`")]
    UnknownCatalogueKey(String),

    #[error("catalogue entry `{key}` requires parameter `{param}`")]
    MissingParam { key: String, param: String },

    #[error("catalogue entry `{key}`: invalid parameter `{param}`: {reason}")]
    InvalidParam { key: String, param: String, reason: String },

    #[error("catalogue entry `{key}` needs {what}")]
    MissingCapability { key: String, what: String },

    #[error("domain `{0}` is empty")]
    EmptyDomain(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("unknown domain `{0}`")]
    UnknownDomain(String),

    #[error("invalid bounds: {0}")]
    BadBounds(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
