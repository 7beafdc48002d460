use std::path::PathBuf;

use thiserror::Error;

use crate::minimize::PartialResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("alphabet mismatch: {left} vs {right} letters")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("letter {letter} is outside the alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },

    #[error("word {word} is both a good and a bad example")]
    ConflictingSample { word: String },

    #[error("determinization exceeded the limit of {limit} states")]
    DeterminizationLimit { limit: usize },

    #[error("model assigns {got} variables, catalog has {expected}")]
    IncompleteModel { expected: usize, got: usize },

    #[error("decoded candidate misclassifies {word}")]
    UnsoundCandidate { word: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Sat(#[from] SatError),

    #[error("minimization timed out; at least {} states are needed", .0.lower_bound)]
    Timeout(Box<PartialResult>),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Failures of a SAT backend. `Timeout` is distinct from an UNSAT answer.
#[derive(Debug, Error)]
pub enum SatError {
    #[error("invalid CNF: {0}")]
    InvalidCnf(String),

    #[error("solver budget exhausted")]
    Timeout,

    #[error("external solver failed: {0}")]
    ProcessFailure(String),

    #[error("unparsable solver output: {0}")]
    BadOutput(String),

    #[error("solver returned a model violating clause {clause}")]
    ModelRejected { clause: usize },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
