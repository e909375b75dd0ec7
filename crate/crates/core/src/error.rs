use alloc::string::String;

use crate::Integer;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(Integer),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("incomplete factorization of {n}: cofactor {cofactor} resisted the configured effort")]
    IncompleteFactorization { n: Integer, cofactor: Integer },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(Integer, Integer),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("residue class not covered: {0}")]
    NotCovered(String),
    #[error("not a solution pair: ({n}, {d})")]
    NotSolution { n: Integer, d: Integer },
    #[error("{0} is not n-integral")]
    NotIntegral(String),
    #[error("Bernoulli number B_{index} not tabulated (table holds {len} entries)")]
    NotTabulated { index: usize, len: usize },
    /// An identity that must hold for all inputs failed. Always a bug.
    #[error("identity violated: {0}")]
    Violation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub(crate) fn violation(msg: impl Into<String>) -> Self {
        Error::Violation(msg.into())
    }

    /// True for errors caused by the factorization effort cap.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::IncompleteFactorization { .. })
    }
}
