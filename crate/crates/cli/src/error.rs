use std::path::PathBuf;

use hyperhec::io::{OutputError, ParseError};
use hyperhec::{HypergraphError, RankingError, SpectralError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Spectral(SpectralError),
    #[error(transparent)]
    Ranking(#[from] RankingError),
    #[error(transparent)]
    Output(#[from] OutputError),
    #[error("{method}: {source}")]
    Solver {
        method: &'static str,
        source: SpectralError,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver {
                source: SpectralError::NotConverged { .. },
                ..
            }
            | CliError::Spectral(SpectralError::NotConverged { .. })
            | CliError::Output(OutputError::NotConverged) => 2,
            _ => 1,
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        CliError::Spectral(e)
    }
}
