use thiserror::Error;

/// Errors raised by the biangle toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("argument {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("index error: {0}")]
    Index(String),

    #[error("pole in coefficient: {0}")]
    Pole(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("quadrature needs at least {needed} nodes, got {got}")]
    QuadratureSize { needed: usize, got: usize },

    #[error("no convergence after {iterations} iterations ({context})")]
    NoConvergence { iterations: usize, context: String },
}

impl Error {
    /// True for errors caused by the inputs rather than by the numerics.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::Domain { .. }
                | Error::Index(_)
                | Error::QuadratureSize { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
