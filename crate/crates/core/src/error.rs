use thiserror::Error;

use crate::model::ItemId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("item id {0} is not in the catalog")]
    UnknownItemId(ItemId),

    #[error("item {name:?} is not in the catalog{}", near_suffix(.near))]
    UnknownItemName { name: String, near: Vec<String> },

    #[error("fraction has a zero denominator")]
    ZeroDenominator,

    #[error("{metric} is undefined: the antecedent occurs in no transaction")]
    UndefinedRatio { metric: &'static str },

    #[error("line {line}: empty item name")]
    EmptyItem { line: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate transaction id {id:?}")]
    DuplicateTxnId { line: usize, id: String },

    #[error("the input contains no transactions")]
    EmptyDatabase,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by the input data rather than by how the
    /// library or CLI was invoked.
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::Config(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

fn near_suffix(near: &[String]) -> String {
    if near.is_empty() {
        String::new()
    } else {
        format!(" (did you mean: {})", near.join(", "))
    }
}
