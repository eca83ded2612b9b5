use thiserror::Error;

pub type Result<T> = std::result::Result<T, QesError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QesError {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quasi-exact solvability condition does not hold for the given couplings.
    #[error("{constraint} not satisfied: residual = {residual:e} (scale {scale:e})")]
    ConstraintViolated {
        constraint: String,
        residual: f64,
        scale: f64,
    },

    /// The quadratic for the two-level sextic energies has no real roots.
    #[error("no real quasi-exact level: discriminant = {0:e}")]
    ComplexPair(f64),

    /// The forward coefficient recurrence did not truncate at the requested degree.
    #[error("series does not terminate: |a_(p+1)| / max|a_i| = {0:e}")]
    NonTerminating(f64),

    /// The exponent does not cancel the leading growth of the potential.
    #[error("ansatz mismatch: {0}")]
    Ansatz(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// The finite-difference box is too small for the requested states.
    #[error("grid cutoff too small: {mass_fraction:e} of the eigenfunction mass lies within 1% of r_max = {r_max}")]
    Cutoff { r_max: f64, mass_fraction: f64 },
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(QesError::Domain(msg.into()))
}
