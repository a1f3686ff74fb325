use thiserror::Error;

/// Errors raised by the simulation, game and verification entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parameters outside the region p + q > 0 (all sites open)")]
    OutsideRegion,

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("malformed pattern: {0}")]
    MalformedPattern(String),

    #[error("word length {word} does not match pattern span {span}")]
    LengthMismatch { word: usize, span: usize },

    #[error("symbol ? is not part of the binary alphabet")]
    QmarkInBinary,

    #[error("window exhausted: light-cone row of width {0} cannot shrink further")]
    WindowExhausted(usize),

    #[error("configurations are incompatible: {0}")]
    Incompatible(String),

    #[error("cylinder span {needed} exceeds measure order {order}")]
    OrderExceeded { needed: usize, order: usize },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("measure is not reflection invariant")]
    NotReflectionInvariant,

    #[error("successor line does not cover the out-neighbourhood of site {0}")]
    InsufficientCoverage(i64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
