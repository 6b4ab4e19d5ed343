use thiserror::Error;

/// Everything that can go wrong while building or certifying a surface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    /// C sits so close to C₀ that the two turning points cannot be separated.
    #[error("degenerate oscillation: C - C0 = {gap:e} is below {threshold:e}")]
    DegenerateOscillation { gap: f64, threshold: f64 },

    #[error("landmark error: {0}")]
    Landmark(String),

    #[error("inconsistent state: first-integral residual {residual:e}")]
    InconsistentState { residual: f64 },

    #[error("non-finite integrand value {value} at abscissa {abscissa:e}")]
    Evaluation { abscissa: f64, value: f64 },

    /// Inside the C̃ guard band the flux integral is served by `xi` instead.
    #[error("C = {c} lies within {band:e} of C~ = {c_tilde}; use xi(n, H) for the threshold value")]
    GuardBand { c: f64, c_tilde: f64, band: f64 },

    #[error("integration failure at t = {t}: {reason}")]
    Integration { t: f64, reason: String },

    /// `K(C, H)` does not hit the winding target the caller asked about.
    #[error("classification refused: K = {k_value} does not match the target {target}")]
    ClassificationRefused { k_value: f64, target: f64 },

    #[error("did not converge: {0}")]
    NonConvergence(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable tag for reports and CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::Domain(_) => "domain",
            Error::Range(_) => "range",
            Error::DegenerateOscillation { .. } => "degenerate_oscillation",
            Error::Landmark(_) => "landmark",
            Error::InconsistentState { .. } => "inconsistent_state",
            Error::Evaluation { .. } => "evaluation",
            Error::GuardBand { .. } => "guard_band",
            Error::Integration { .. } => "integration",
            Error::ClassificationRefused { .. } => "classification_refused",
            Error::NonConvergence(_) => "non_convergence",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
