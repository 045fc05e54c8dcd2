//! Error type shared by all modules.

/// Errors surfaced by the library.
///
/// The variants mirror the process exit codes of the CLI: domain and
/// refusal errors exit with code 2 (unsupported or infeasible input),
/// verification failures exit with code 1 (an identity that must hold was
/// violated, which is a bug signal), parse errors exit with code 64.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on the input is violated (e.g. repeated roots,
    /// composite modulus, mismatched algebras).
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is refused: infeasible size, or a case the library
    /// deliberately does not approximate (ramified places, p = 2).
    #[error("refused: {0}")]
    Refused(String),

    /// An identity that is guaranteed to hold failed an exact check.
    /// Carries a human-readable certificate of the failure.
    #[error("verification failure: {0}")]
    Verification(String),

    /// Malformed textual input (polynomial or point grammar).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn refused(msg: impl Into<String>) -> Self {
        Error::Refused(msg.into())
    }
    pub(crate) fn verify(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
