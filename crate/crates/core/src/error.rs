use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("amplitude {amplitude:e} crossed the wire seam at step {step}")]
    SeamLeak { step: usize, amplitude: f64 },

    #[error("requested {requested} steps but the truncated line is exact only up to {horizon}")]
    HorizonExceeded { requested: usize, horizon: usize },

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("no gap root for theta = {theta}, L = {half_length}")]
    NoGapRoot { theta: f64, half_length: usize },

    #[error("marginal band-edge case cos(omega) = cos(theta)")]
    Marginal,

    #[error("root count mismatch: expected {expected}, found {found}")]
    RootCountMismatch { expected: usize, found: usize },

    #[error("localization fit needs at least 4 usable sites, found {0}")]
    TooFewSites(usize),

    #[error("state is not an eigenvector (residual {0:e})")]
    NotAnEigenvector(f64),

    #[error("operator {0} is not supported for this field")]
    UnsupportedField(String),

    #[error("no isolated gap pair found in the requested window")]
    GapPairNotFound,

    #[error("root finding failed: {0}")]
    RootFinding(String),
}

impl Error {
    /// True for errors caused by bad user input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::GeometryMismatch(_)
                | Error::UnsupportedField(_)
                | Error::HorizonExceeded { .. }
        )
    }
}
