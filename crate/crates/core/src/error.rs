use thiserror::Error;

/// Reasons a Cayley table is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("order {0} exceeds the supported maximum of 16")]
    TooLarge(usize),
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("table[{row}][{col}] = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("not a Latin square: table[{row}][{col}] = {value} repeats in its {axis}")]
    NotLatin {
        row: usize,
        col: usize,
        value: usize,
        axis: &'static str,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} = {lhs} but {a}*({b}*{c}) = {rhs}")]
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
        lhs: usize,
        rhs: usize,
    },
    #[error("unknown group preset `{0}`")]
    UnknownPreset(String),
    #[error("bad preset parameter in `{0}`")]
    BadParameter(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource cap exceeded: {required} subsets required, cap is {cap}")]
    Resource { required: u128, cap: u128 },
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
