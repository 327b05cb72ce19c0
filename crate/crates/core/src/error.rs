use thiserror::Error;

/// Errors raised by the bound, graph, simulation and routing routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A channel or chain description is incomplete or inconsistent.
    #[error("specification error: {0}")]
    Spec(String),

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The network violates a structural invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// Exhaustive cut enumeration refused because the search space is too large.
    #[error("refusing to enumerate cuts over {count} intermediate nodes (limit {limit})")]
    TooManyNodes { count: usize, limit: usize },

    /// A link with zero transmittance can never herald a photon.
    #[error("link never succeeds (transmittance 0)")]
    LinkNeverSucceeds,

    /// No usable path joins the endpoints.
    #[error("endpoints {a} and {b} are disconnected")]
    Disconnected { a: String, b: String },
}

pub type Result<T> = std::result::Result<T, Error>;
