use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not irrational: {0}")]
    NotIrrational(String),

    #[error("malformed alpha spec `{0}`")]
    MalformedAlpha(String),

    #[error("insufficient precision: {bits}-bit mantissa cannot hold error bound of {err_bits} bits (limit {limit} bits); re-realize at higher precision")]
    InsufficientPrecision { bits: u32, err_bits: u64, limit: u64 },

    #[error("precision of {requested} bits is below the policy minimum of {minimum} bits")]
    PrecisionBelowPolicy { requested: u32, minimum: u32 },

    #[error("precision of {0} bits exceeds the {max}-bit wide-integer limit", max = crate::fixedpoint::Precision::MAX_BITS)]
    PrecisionTooLarge(u64),

    #[error("order k={0} out of supported range 1..={max}", max = crate::lemma::MAX_ORDER)]
    OrderOutOfRange(u32),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
