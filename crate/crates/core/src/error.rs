use thiserror::Error;

/// Failures raised anywhere in the shape, holonomy, solver and verifier layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurgeryError {
    #[error("degenerate shape: {0}")]
    DegenerateShape(String),
    #[error(
        "Newton iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("filling equation has vanishing derivative (|g'| = {0:e})")]
    DegenerateJacobian(f64),
    #[error("path continuation step collapsed near {re} + {im}i")]
    StepCollapse { re: f64, im: f64 },
    #[error("meridian and longitude logs are real-collinear (det = {0:e})")]
    SingularSystem(f64),
    #[error("filling ({p}, {q}) is not a primitive integer pair")]
    NotPrimitive { p: f64, q: f64 },
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl SurgeryError {
    /// Stable machine-readable tag, shared by the CLI error objects and the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            SurgeryError::DegenerateShape(_) => "degenerate_shape",
            SurgeryError::NoConvergence { .. } => "no_convergence",
            SurgeryError::DegenerateJacobian(_) => "degenerate_jacobian",
            SurgeryError::StepCollapse { .. } => "step_collapse",
            SurgeryError::SingularSystem(_) => "singular_system",
            SurgeryError::NotPrimitive { .. } => "not_primitive",
            SurgeryError::DegenerateTriangle(_) => "degenerate_triangle",
            SurgeryError::InvalidInput(_) => "invalid_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, SurgeryError>;
