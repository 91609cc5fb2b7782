use alloc::string::String;

use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("calibration failed: {0}")]
    Calibration(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! arg_err {
    ($($t:tt)*) => {
        $crate::error::Error::Argument(alloc::format!($($t)*))
    };
}

macro_rules! capacity_err {
    ($($t:tt)*) => {
        $crate::error::Error::Capacity(alloc::format!($($t)*))
    };
}

pub(crate) use arg_err;
pub(crate) use capacity_err;
