//! Error types for lattice construction, problem setup, and enumeration caps.
//!
//! Usage errors — passing an element to a lattice it does not belong to,
//! evaluating a polynomial at a point of the wrong arity, and the like — are
//! programming mistakes and panic via `assert!`. The types here cover the
//! remaining, data-driven failures: malformed construction input and
//! enumerations that would exceed a configured cap.

use thiserror::Error;

/// Failures while building a [`DistributiveLattice`](crate::DistributiveLattice).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    /// The supplied cover pairs contain a cycle; the message lists the
    /// irreducibles on it.
    #[error("cover pairs are cyclic: {0}")]
    CyclicCovers(String),
    /// A cover pair mentions a node that was never declared.
    #[error("unknown node `{0}` in cover pair")]
    UnknownNode(String),
    /// The same node name was declared twice.
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    /// A chain must have at least one element.
    #[error("chain must have at least 1 element")]
    EmptyChain,
    /// The irreducible poset is larger than the supported maximum.
    #[error("{got} join-irreducibles exceed the supported maximum of {max}")]
    TooManyIrreducibles { got: usize, max: usize },
    /// A custom label list does not have one label per element.
    #[error("{got} labels supplied for {want} elements")]
    LabelCount { got: usize, want: usize },
    /// A node name or label is empty or contains a reserved character.
    #[error("invalid name `{0}` (must be nonempty, without whitespace or any of `(),<>{{}}[]#;`)")]
    BadName(String),
    /// Two elements were given the same label.
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
}

/// Failures while assembling a [`CuboidProblem`](crate::CuboidProblem).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    /// Coordinate bounds must satisfy `a < b` strictly.
    #[error("coordinate {coord}: bounds must satisfy a < b strictly")]
    NonStrictBounds { coord: usize },
    /// The value table must have one entry per subset of the coordinates.
    #[error("value table has {got} entries, expected {want}")]
    WrongTableSize { got: usize, want: usize },
    /// Coefficient tables are indexed by `u32` subset masks and enumerated
    /// explicitly, so the arity is capped at desk scale.
    #[error("arity {got} exceeds the supported maximum of {max}")]
    ArityTooLarge { got: usize, max: usize },
}

/// Solution enumeration was refused because the coefficient-interval
/// combination count already exceeds the cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration cap exceeded: {combinations} interval combinations (cap {cap})")]
pub struct CapExceeded {
    /// Product of the per-subset interval sizes — an upper bound on the
    /// solution count and a lower bound on the enumeration work.
    pub combinations: u128,
    /// The cap that was in force.
    pub cap: u64,
}

/// Brute-force enumeration was aborted: more monotone coefficient tables
/// exist than the configured maximum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("function cap exceeded: more than {cap} monotone coefficient tables")]
pub struct FunctionCapExceeded {
    /// The cap that was in force.
    pub cap: u64,
}
