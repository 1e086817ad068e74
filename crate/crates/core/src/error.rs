use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("axis {axis} out of range for a phase in {dim} variables")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("the origin is not a critical point of the phase (linear term present)")]
    NotCritical,

    #[error("phase has no non-constant terms")]
    ConstantPhase,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("gamma function pole at {0}")]
    GammaPole(f64),

    #[error("numeric budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("numerical integration did not converge: {0}")]
    NotConverged(String),

    #[error("expansion hypothesis not confirmed: relative spread {residual:.3e} (coefficient {coefficient})")]
    ExpansionNotConfirmed {
        residual: f64,
        coefficient: Complex64,
    },

    #[error("outside theorem scope: {0}")]
    OutOfScope(String),

    #[error("estimate inconclusive: {0}")]
    Inconclusive(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code: 2 for bad input, 3 for an exhausted numeric budget,
    /// 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) | Error::NotConverged(_) => 3,
            Error::ExpansionNotConfirmed { .. } | Error::Inconclusive(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
