//! Error type and resource limits shared by every enumerating operation.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A bounded enumeration would exceed its configured cap.  Operations
    /// fail loudly instead of approximating.
    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    EnumerationCap {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    /// A point failed the admissibility invariants (contains the identity,
    /// tagged coordinates are backed by their untagged group coordinate).
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    /// `translate_point(t, ξ)` requires `t⁻¹ ∈ ξ`.
    #[error("point is not in the domain of translation by `{t}`")]
    TranslationDomain { t: String },

    /// Construction-time validation of contexts, matrices, graphs or maps.
    #[error("invalid input: {0}")]
    Validation(String),

    /// Expression or word text that does not match the grammar.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Caps for the enumerating operations.
///
/// `max_assignments` bounds the 0/1 assignments walked by `sup_norm`,
/// `max_search_nodes` bounds the branch count of the relation-set search,
/// and `max_ball` bounds word enumeration.  Defaults match ordinary desk
/// scale; the CLI exposes them through `--cap`.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_ball: usize,
    pub max_assignments: u64,
    pub max_search_nodes: u64,
    pub max_search_coords: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ball: 200_000,
            max_assignments: 1 << 20,
            max_search_nodes: 4_000_000,
            max_search_coords: 65_536,
        }
    }
}

impl Limits {
    /// Uniform cap used by the CLI `--cap` flag.
    pub fn with_cap(cap: u64) -> Self {
        Limits {
            max_ball: cap.min(usize::MAX as u64) as usize,
            max_assignments: cap,
            max_search_nodes: cap,
            max_search_coords: cap.min(1 << 20) as usize,
        }
    }
}
