//! Session plumbing for the `rholog` binary: loading program and proximity
//! files, the interactive loop and batch execution.

mod repl;

use std::fs;
use std::path::{Path, PathBuf};

use rholog_core::proximity::ProximityError;
use rholog_core::syntax::{parse_program, parse_proximity_decls, ParseError};
use rholog_core::{ClauseDb, Engine, EngineConfig, LoadError, ProximityRelation};
use thiserror::Error;

pub use repl::{run_batch, run_repl, EXIT_LOAD_ERROR, EXIT_OK, EXIT_QUERY_ERROR};

#[derive(Debug, Clone, Default)]
pub struct SessionConfig {
    pub program_paths: Vec<PathBuf>,
    pub proximity_path: Option<PathBuf>,
    pub nf_step_limit: Option<usize>,
    pub answer_limit: Option<usize>,
    pub batch_queries: Vec<String>,
    pub trace: bool,
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    Load { path: PathBuf, source: LoadError },
    #[error("{}: {source}", path.display())]
    Proximity {
        path: PathBuf,
        source: ProximityError,
    },
}

/// A loaded program and proximity relation, ready to answer queries.
#[derive(Debug, Default)]
pub struct Session {
    pub db: ClauseDb,
    pub relation: ProximityRelation,
    pub engine_config: EngineConfig,
    pub answer_limit: Option<usize>,
}

fn read(path: &Path) -> Result<String, SessionError> {
    fs::read_to_string(path).map_err(|source| SessionError::Io {
        path: path.to_owned(),
        source,
    })
}

impl Session {
    pub fn load(cfg: &SessionConfig) -> Result<Session, SessionError> {
        let mut session = Session {
            engine_config: EngineConfig {
                nf_step_limit: cfg.nf_step_limit,
                trace: cfg.trace,
            },
            answer_limit: cfg.answer_limit,
            ..Session::default()
        };
        for path in &cfg.program_paths {
            session.add_program(path, &read(path)?)?;
        }
        if let Some(path) = &cfg.proximity_path {
            session.set_proximity(path, &read(path)?)?;
        }
        Ok(session)
    }

    /// Adds the clauses of `src`; `path` is only used in error messages.
    pub fn add_program(&mut self, path: &Path, src: &str) -> Result<(), SessionError> {
        let program = parse_program(src).map_err(|source| SessionError::Parse {
            path: path.to_owned(),
            source,
        })?;
        self.db
            .extend(&program)
            .map_err(|source| SessionError::Load {
                path: path.to_owned(),
                source,
            })
    }

    pub fn set_proximity(&mut self, path: &Path, src: &str) -> Result<(), SessionError> {
        let decls = parse_proximity_decls(src).map_err(|source| SessionError::Parse {
            path: path.to_owned(),
            source,
        })?;
        self.relation =
            ProximityRelation::from_decls(&decls).map_err(|source| SessionError::Proximity {
                path: path.to_owned(),
                source,
            })?;
        Ok(())
    }

    pub fn engine(&self) -> Engine<'_> {
        Engine::new(&self.db, &self.relation, self.engine_config)
    }
}
