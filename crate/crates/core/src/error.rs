use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate generator id `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator id `{0}`")]
    UnknownGenerator(String),

    #[error("quantum shift {0} is odd")]
    OddShift(i32),

    #[error("entry {from} -> {to} is not homogeneous: {reason}")]
    Inhomogeneous { from: String, to: String, reason: String },

    #[error("entry {from} -> {to} is not a unit of Z[G]")]
    NotUnit { from: String, to: String },

    #[error("no entry {from} -> {to}")]
    MissingEntry { from: String, to: String },

    #[error("input not knot-like: {0}")]
    NotKnotLike(String),

    #[error("characteristic {0} is neither 0 nor a prime")]
    BadCharacteristic(u64),

    #[error("invalid staircase: {0}")]
    InvalidStaircase(String),

    #[error("parse error at {pos} in `{input}`: {msg}")]
    Parse { input: String, pos: usize, msg: String },

    #[error("knots only: diagram has {0} components")]
    NotAKnot(usize),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    CrossingCap { crossings: usize, cap: usize },

    #[error("diagram is not positive")]
    NotPositive,

    #[error("Euler characteristic {0} is not a unit")]
    EulerNotUnit(i64),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: &str, pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { input: input.to_string(), pos, msg: msg.into() }
    }
}
