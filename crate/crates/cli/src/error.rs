use qes_core::QesError;

/// Failure classes, each with its own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Constraint(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Verification(_) => 4,
        }
    }
}

impl From<QesError> for CliError {
    fn from(e: QesError) -> Self {
        match e {
            QesError::Domain(msg) => CliError::Usage(msg),
            QesError::ConstraintViolated { .. } | QesError::ComplexPair(_) => CliError::Constraint(e.to_string()),
            QesError::NonTerminating(_)
            | QesError::Ansatz(_)
            | QesError::NoConvergence(_)
            | QesError::Cutoff { .. } => CliError::Solver(e.to_string()),
        }
    }
}
