use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: cxsurgery::Error,
    },
    #[error(transparent)]
    Core(#[from] cxsurgery::Error),
}

impl CliError {
    /// 1 for bad invocations and unreadable input, 2 when a computation
    /// rejects otherwise well-formed input.
    pub fn exit_code(&self) -> u8 {
        use cxsurgery::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => 1,
            CliError::Core(e) => match e {
                E::Syntax { .. }
                | E::ZeroLiteral { .. }
                | E::EmptyFaceList
                | E::EmptyFace(_)
                | E::UnknownVertex(_)
                | E::UnknownFace(_)
                | E::UnknownEdge(_)
                | E::NonTriangular { .. }
                | E::OutOfRange(_)
                | E::Precondition(_)
                | E::UnknownName(_)
                | E::NonTotalMap(_)
                | E::CobordismFile(_) => 1,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
