use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the constructions and the verification oracle.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pairing violation: {0}")]
    PairingViolation(String),

    #[error("exhaustive enumeration of order {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("block structure violated at ({row}, {col})")]
    BlockStructure { row: usize, col: usize },

    /// `|c_ij| <= s_ij` fails at the listed (row, col) positions.
    #[error("majorization |c_ij| <= s_ij violated at {positions:?}")]
    Majorization { positions: Vec<(usize, usize)> },

    #[error("entry ({row}, {col}) = {value} is negative")]
    Negative { row: usize, col: usize, value: f64 },

    #[error("invalid last-row split: {0}")]
    InvalidSplit(String),

    #[error("invalid sign pattern: {0}")]
    InvalidSignPattern(String),

    /// A named precondition of a closed-form realizer failed.
    #[error("condition not met: {0}")]
    Condition(String),

    #[error("no nonnegative circulant matrix realizes the shifted list")]
    NoNonnegativeCirculant,

    #[error("rank-one domination r_ij >= chi >= |c_k| failed: {0}")]
    Domination(String),

    #[error("eigenvalue iteration did not converge after {0} iterations")]
    NonConvergence(usize),
}

impl Error {
    /// True for clean negatives: the input is well formed but a sufficient
    /// condition or precondition of the construction does not hold.
    pub fn is_condition_failure(&self) -> bool {
        matches!(
            self,
            Error::PairingViolation(_)
                | Error::Majorization { .. }
                | Error::Negative { .. }
                | Error::Condition(_)
                | Error::NoNonnegativeCirculant
        )
    }

    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Domination(_) | Error::NonConvergence(_))
    }
}
