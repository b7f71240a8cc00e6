use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coupling weights must be positive (a = {a}, c = {c})")]
    DegenerateCoupling { a: f64, c: f64 },

    #[error("dimension n = {n} is too small; need n >= 2")]
    DimensionTooSmall { n: usize },

    #[error("parameter `{name}` is not finite")]
    NonFinite { name: &'static str },

    #[error("evaluation point outside the domain: {0}")]
    DomainError(&'static str),

    #[error("phi = {phi} sits on a pole of cot(n*phi)")]
    BranchPole { phi: f64 },

    #[error("a + e = {sum} vanishes; use the closed form for a + e = 0")]
    ZeroDenominator { sum: f64 },

    #[error(
        "root count anomaly at n = {n}: {branch} unit-circle roots + {special} special roots != n"
    )]
    RootCountAnomaly {
        n: usize,
        branch: usize,
        special: usize,
        /// Seeds whose refinement failed, with the failure message.
        rejected: Vec<(Complex64, String)>,
    },

    #[error("iteration did not converge after {iterations} steps (last iterate {last})")]
    NoConvergence { iterations: usize, last: Complex64 },

    #[error("iterate collapsed onto the unit circle (|y| = {modulus})")]
    UnitCircleCollapse { modulus: f64 },

    #[error("y = {y} is a root at +-1; the power-sum formula degenerates to zero")]
    DegenerateRoot { y: Complex64 },

    #[error("b^2 - 4ac = {discriminant} vanishes; leader eigenvector is a limit case")]
    DiscriminantCollapse { discriminant: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parameters are not decentralized (need b = a + c and c = e + d)")]
    NotDecentralized,

    #[error("time step {dt} exceeds the RK4 stability bound {dt_max}")]
    StepSizeTooLarge { dt: f64, dt_max: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateCoupling { .. } => "DegenerateCoupling",
            Error::DimensionTooSmall { .. } => "DimensionTooSmall",
            Error::NonFinite { .. } => "NonFinite",
            Error::DomainError(_) => "DomainError",
            Error::BranchPole { .. } => "BranchPole",
            Error::ZeroDenominator { .. } => "ZeroDenominator",
            Error::RootCountAnomaly { .. } => "RootCountAnomaly",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::UnitCircleCollapse { .. } => "UnitCircleCollapse",
            Error::DegenerateRoot { .. } => "DegenerateRoot",
            Error::DiscriminantCollapse { .. } => "DiscriminantCollapse",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotDecentralized => "NotDecentralized",
            Error::StepSizeTooLarge { .. } => "StepSizeTooLarge",
            Error::NotApplicable(_) => "NotApplicable",
            Error::InvalidConfig(_) => "InvalidConfig",
        }
    }
}
