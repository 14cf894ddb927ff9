use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iterative method (root bracket, quadrature, ODE step) gave up.
    #[error("{method} did not converge: {detail}")]
    NoConvergence { method: &'static str, detail: String },

    #[error("fit error: {0}")]
    Fit(String),

    /// A brute-force computation would exceed its configured work budget.
    #[error("budget exceeded: {requested} lattice points requested, limit is {limit}")]
    Budget { requested: u128, limit: u128 },

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn no_convergence(method: &'static str, detail: impl Into<String>) -> Self {
        Error::NoConvergence {
            method,
            detail: detail.into(),
        }
    }

    /// True for failures of the numerics, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::Budget { .. })
    }
}
