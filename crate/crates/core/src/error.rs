use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: estimate {estimate:e}, error {abs_err:e} after {subdivisions} subdivisions")]
    NonConvergence {
        estimate: f64,
        abs_err: f64,
        subdivisions: usize,
    },

    /// An integrand or objective returned NaN or an infinity.
    #[error("non-finite value {value} at {at}")]
    NonFinite { at: f64, value: f64 },

    /// A cross product vanished (observer collinear with a ray).
    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// The pre-scan found more than one separated local maximum.
    #[error("objective is not unimodal: local maxima near {first} and {second}")]
    MultipleMaxima { first: f64, second: f64 },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}
