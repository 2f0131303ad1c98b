use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight gamma must be a finite positive number, got {0}")]
    InvalidGamma(f64),

    #[error("point {re}{im:+}i is not inside the open unit disc")]
    OutsideDisc { re: f64, im: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("symbol has a pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("{0} has no radial profile")]
    NoRadialProfile(&'static str),

    #[error("no interior maximum: {0}")]
    NoInteriorMaximum(String),

    #[error("truncation depth {depth} is below the operator degree {required}")]
    DepthTooSmall { depth: usize, required: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn outside(z: num_complex::Complex64) -> Self {
        Error::OutsideDisc { re: z.re, im: z.im }
    }
}
