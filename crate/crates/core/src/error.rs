use thiserror::Error;

/// Errors produced by the algebra and handle-calculus layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A word letter is malformed (exponent not in {+1, -1}, or a zero
    /// run-length exponent).
    #[error("invalid word: {0}")]
    InvalidWord(String),

    /// An endomorphism was applied to a word mentioning a generator it has
    /// no image for.
    #[error("invalid endomorphism: {0}")]
    InvalidEndomorphism(String),

    /// A presentation violates its invariants (letter index out of range,
    /// name count mismatch).
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    /// A Tietze or framed-link move does not match its required pattern.
    #[error("invalid move: {0}")]
    InvalidMove(String),

    /// A bundle specification is inconsistent (monodromy does not preserve
    /// the fiber relator).
    #[error("invalid bundle spec: {0}")]
    InvalidSpec(String),

    /// An operation was called outside its domain (non-closed handlebody,
    /// non-symmetric form, fiber genus mismatch).
    #[error("domain error: {0}")]
    Domain(String),

    /// Exhaustive enumeration would exceed the caller's budget.
    /// `required` is the full assignment count that would be visited.
    #[error("resource limit exceeded: search needs {required} assignments, cap is {cap}")]
    ResourceLimit { required: u128, cap: u128 },

    /// The framed link carries builder-default linking data, so boundary
    /// and intersection-form quantities are not computable from it.
    #[error("geometric linking data absent: {0}")]
    AlgebraicOnly(String),
}

pub type Result<T> = std::result::Result<T, Error>;
