use thiserror::Error;

/// Errors raised anywhere in the engine. The variants map one-to-one onto
/// the command line exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed user input: a bad Cartan type, an index out of range, ...
    #[error("configuration error: {0}")]
    Config(String),
    /// A call that breaks an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// A configured enumeration or dimension cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Budget(String),
    /// An internal invariant failed (non-integral structure constant,
    /// unorientable facet, ...). Always a bug or a convention mismatch.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps that keep every computation at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest total rank accepted for Weyl group enumeration.
    pub max_rank: usize,
    /// Largest Weyl group order for which Schubert representatives are built.
    pub max_schubert_order: usize,
    /// Cap on `|W^P|^(s+1)` and on oracle sample boxes.
    pub tuple_budget: u64,
    /// Cap on the dimension of any module whose weights are tabulated, and on
    /// the dimension product of a two-factor tensor decomposition.
    pub dim_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 6,
            max_schubert_order: 1200,
            tuple_budget: 10_000_000,
            dim_cap: 1_000_000,
        }
    }
}
