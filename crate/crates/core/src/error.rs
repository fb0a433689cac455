use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of a function.
    #[error("{func}: argument {value} outside domain ({expected})")]
    Domain {
        func: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Argument inside the domain but beyond what the routine evaluates stably.
    #[error("{func}: {what} = {value} exceeds supported limit {limit}")]
    Range {
        func: &'static str,
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root solver did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("bracket expansion exhausted at x = {x_max} without a sign change")]
    BracketExhausted { x_max: f64 },

    #[error("channel block is {got_qt}x{got_qr}, expected {want_qt}x{want_qr}")]
    DimensionMismatch {
        want_qt: usize,
        want_qr: usize,
        got_qt: usize,
        got_qr: usize,
    },

    /// Too few trials to resolve the requested quantile.
    #[error("{trials} trials cannot resolve epsilon = {epsilon}; need at least {required}")]
    Resolution {
        trials: u64,
        epsilon: f64,
        required: u64,
    },

    #[error("constraint violated: {0}")]
    Constraint(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        func,
        value,
        expected,
    }
}
