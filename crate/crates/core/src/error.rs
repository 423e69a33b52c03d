use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bose level with multiplicity one: the digamma gap vanishes identically.
    #[error("degenerate level: multiplicity {0} leaves no finite Bose occupancy")]
    DegenerateLevel(f64),

    /// Bose level with a nonpositive scaled value; the occupancy diverges.
    #[error("unbounded occupation: beta*x = {0} must be positive for Bose levels")]
    UnboundedOccupation(f64),

    /// Fermi-type exclusion violated.
    #[error("over-occupation: {0}")]
    OverOccupation(String),

    /// No positive price makes the requested pyramid deposit optimal.
    #[error("no positive beta makes pyramid deposit m = {m} optimal (stationary value {value})")]
    NoPositiveBeta { m: f64, value: f64 },

    /// A critical value was requested in a regime where it does not exist.
    #[error("critical value does not exist: {0}")]
    NoCriticalValue(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("capacity exceeded: enumeration visited more than {limit} states")]
    Capacity { limit: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of an iterative method rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}
