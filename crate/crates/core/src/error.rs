use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("series did not converge within {terms} terms (residual {residual:.3e})")]
    NonConvergence { terms: usize, residual: f64 },

    #[error("acceleration failed: residual estimate {residual:.3e} above tolerance {tolerance:.3e}")]
    AccelerationFailure { residual: f64, tolerance: f64 },

    #[error("angle {theta} rad lies inside the excluded forward cone (theta_min = {theta_min})")]
    ForwardDirection { theta: f64, theta_min: f64 },

    #[error("energy {energy} is not above the rest energy {rest_energy}")]
    SubThreshold { energy: f64, rest_energy: f64 },

    #[error("channel j = {j} sits on the critical boundary (j + nu)^2 = gamma^2")]
    CriticalBoundary { j: f64 },

    #[error("channel j = {j} is supercritical")]
    SupercriticalChannel { j: f64 },

    #[error("channel j = {j} is not supercritical")]
    NotSupercritical { j: f64 },

    #[error("step size underflow at rho = {rho}")]
    StepSizeUnderflow { rho: f64 },

    #[error("asymptotic fit is ill-conditioned (relative residual {relative_residual:.3e})")]
    IllConditionedFit { relative_residual: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for failures of a numerical procedure rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Overflow(_)
                | Error::NonConvergence { .. }
                | Error::AccelerationFailure { .. }
                | Error::StepSizeUnderflow { .. }
                | Error::IllConditionedFit { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
