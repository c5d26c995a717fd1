use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A certification configuration cannot give the requested guarantee.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Stored data (a certificate, a case id) does not describe a valid object.
    #[error("invalid data: {0}")]
    Data(String),

    /// An enumeration would exceed the permitted number of checks.
    #[error("budget exceeded after {checked} of {required} checks (budget {budget})")]
    Budget {
        checked: u64,
        required: u64,
        budget: u64,
    },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }
}
