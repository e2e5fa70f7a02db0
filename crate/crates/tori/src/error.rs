use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
///
/// The split matters to callers: `Domain`, `InvalidCurve` and
/// `TargetOutsideBracket` mean the request itself was bad, while the
/// remaining variants mean a computation was attempted and did not
/// converge or left the representable range.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integrand evaluated to a non-finite value at x = {x}")]
    NonFiniteEvaluation { x: f64 },

    #[error("quadrature on [{lo}, {hi}] did not converge within recursion depth {depth}")]
    QuadratureDepthExceeded { lo: f64, hi: f64, depth: u32 },

    #[error("ode state became non-finite at t = {t}")]
    OdeDiverged { t: f64 },

    #[error("root solve stalled: best residual {residual:e} still above tolerance {tol:e}")]
    RootNoConvergence { residual: f64, tol: f64 },

    #[error("target {target} lies outside the bracket values [{f_lo}, {f_hi}]")]
    TargetOutsideBracket { target: f64, f_lo: f64, f_hi: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("invalid sphere curve: {0}")]
    InvalidCurve(String),

    #[error("fundamental-domain reduction failed: {0}")]
    ReductionFailed(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("horizontal lift diverged: projection drift {drift:e} exceeds {limit:e}")]
    LiftDiverged { drift: f64, limit: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True when the error reports a bad request rather than a failed
    /// computation. CLI layers map this distinction onto exit codes.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::InvalidCurve(_) | Error::TargetOutsideBracket { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
