//! Computations in the stable module category stmod(kG) of a finite p-group.
//!
//! The crate provides exact linear algebra over prime fields
//! ([`exactlin`]), finite groups by Cayley table ([`groups`]),
//! finite-dimensional kG-modules and their structure theory ([`reps`]),
//! the stable category layer with syzygies, Tate cohomology and ghost
//! detection ([`stable`]), explicit ghost constructions over cyclic
//! groups and C_p x C_p ([`paperghosts`]), and a verification harness
//! with JSON reports ([`verify`]).
//!
//! A ghost is a map between kG-modules that induces zero on Tate
//! cohomology in every degree. The central fact this crate makes
//! machine-checkable: for a non-trivial finite p-group G, every ghost
//! between finite-dimensional modules is stably trivial exactly when G
//! is C2 or C3. See `verify::classify_gh` and the `verify` CLI
//! subcommand.
//!
//! All computations are exact over F_p and deterministic given a seed;
//! only prime fields are supported since the classification does not
//! depend on the ground field.

pub mod cli;
pub mod exactlin;
pub mod formats;
pub mod groups;
pub mod paperghosts;
pub mod reps;
pub mod stable;
pub mod verify;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("group or field mismatch: {0}")]
    Mismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("{0}: {1}")]
    Json(String, #[source] serde_json::Error),
}
