use std::fmt;

/// Why a command could not produce a report, mapped to an exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Unreadable file, malformed JSON, bad rational literal or flag value.
    Parse(String),
    /// Well-formed input that does not describe a valid instance or query:
    /// unknown labels, missing embedding, non-pointed cone and so on.
    Semantic(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Semantic(_) => 3,
        }
    }

    pub fn context(self, ctx: &str) -> Self {
        match self {
            Failure::Parse(m) => Failure::Parse(format!("{ctx}: {m}")),
            Failure::Semantic(m) => Failure::Semantic(format!("{ctx}: {m}")),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Semantic(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<qcm_core::Error> for Failure {
    fn from(e: qcm_core::Error) -> Self {
        match e {
            qcm_core::Error::ParseRational(_) => Failure::Parse(e.to_string()),
            _ => Failure::Semantic(e.to_string()),
        }
    }
}
