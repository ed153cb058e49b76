//! Crate-wide error type.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("unknown shape `{0}` (expected heart2d, heart3d or cubes3d)")]
    UnknownShape(String),

    #[error("invalid nodes: {0}")]
    InvalidNodes(String),

    #[error(
        "interpolation system is numerically singular (rcond = {rcond:.3e}); \
         node geometry is likely duplicated or degenerate"
    )]
    SingularSystem { rcond: f64 },

    #[error("RBF solve produced non-finite coefficients")]
    NonFiniteSolve,

    #[error("non-finite update at node {node} ({branch} branch)")]
    NonFiniteUpdate { node: usize, branch: &'static str },

    #[error(
        "reduced grid is empty: no lattice node lies within {delta_s} of the data set \
         (grid spacing {dx})"
    )]
    EmptyReducedGrid { delta_s: f64, dx: f64 },

    #[error("update metric undefined: previous iterate has zero L1 norm")]
    ZeroUpdateNorm,

    #[error("config: {0}")]
    Config(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Tag an error with the pipeline stage it occurred in.
    pub fn stage(stage: &'static str, source: Error) -> Self {
        Error::Stage {
            stage,
            source: Box::new(source),
        }
    }
}
