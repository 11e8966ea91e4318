//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Result`]; the variants
//! below name the precondition or resource limit that was violated.  Numeric
//! failures (ambiguous eigenvalue grouping, rank mismatches) are reported via
//! [`Error::NumericalFailure`] rather than silently absorbed.

use thiserror::Error;

/// Errors produced by graph, design, code, scheme, and bound operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex or eigenspace index exceeds the valid range.
    #[error("index {index} out of range (valid indices are 0..{bound})")]
    OutOfRange {
        /// The offending index.
        index: usize,
        /// One past the largest valid index.
        bound: usize,
    },

    /// A structural parameter lies outside the supported range.
    #[error("{what} = {value} outside supported range {min}..={max}")]
    OutOfSupportedRange {
        /// Which parameter was out of range.
        what: &'static str,
        /// The supplied value.
        value: usize,
        /// Smallest supported value.
        min: usize,
        /// Largest supported value.
        max: usize,
    },

    /// An edge joins a vertex to itself.
    #[error("loop at vertex {vertex}: edges must join distinct vertices")]
    Loop {
        /// The vertex carrying the loop.
        vertex: usize,
    },

    /// The same edge was listed twice.
    #[error("duplicate edge ({a}, {b})")]
    DuplicateEdge {
        /// Smaller endpoint.
        a: usize,
        /// Larger endpoint.
        b: usize,
    },

    /// The same vertex was listed twice in a design or subset.
    #[error("duplicate vertex {vertex} in subset")]
    DuplicateVertex {
        /// The repeated vertex.
        vertex: usize,
    },

    /// The graph is not connected.
    #[error("graph is not connected")]
    Disconnected,

    /// A fixture name was not recognized.
    #[error("unknown fixture {name:?} (expected complete:N, complete_bipartite:M,N, truncated_tetrahedron, or petersen)")]
    UnknownFixture {
        /// The unrecognized name.
        name: String,
    },

    /// A floating computation could not be resolved within tolerance.
    #[error("numerical failure: {context}")]
    NumericalFailure {
        /// What went wrong.
        context: String,
    },

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// The required dimension.
        expected: usize,
        /// The dimension actually supplied.
        found: usize,
    },

    /// Designs must contain at least one vertex.
    #[error("design is empty: averaging sets must be nonempty")]
    EmptyDesign,

    /// The operation is defined only for regular graphs.
    #[error("graph is not regular")]
    NotRegular,

    /// Rebasing cannot reduce the integrated count of a fully integrated
    /// eigenspace: every orthonormal basis of such a space is fully
    /// integrated.
    #[error("eigenspace is fully integrated; every basis has all {dimension} vectors integrated")]
    FullyIntegrated {
        /// Dimension of the eigenspace.
        dimension: usize,
    },

    /// The requested integrated count is unachievable for this eigenspace.
    #[error("cannot rebase to {requested} integrated vectors in a {dimension}-dimensional eigenspace that is not fully integrated (at most {dimension} - 1 achievable)")]
    BadTarget {
        /// The requested number of integrated basis vectors.
        requested: usize,
        /// Dimension of the eigenspace.
        dimension: usize,
    },

    /// The supplied basis is not orthonormal.
    #[error("basis is not orthonormal: {context}")]
    NotOrthonormal {
        /// Which check failed.
        context: String,
    },

    /// A resource cap would be exceeded.
    #[error("{context}: size {size} exceeds limit {limit}")]
    TooLarge {
        /// What was being sized.
        context: &'static str,
        /// The requested size.
        size: u64,
        /// The enforced limit.
        limit: u64,
    },

    /// The object is too short for the requested operation.
    #[error("length {length} too short (minimum {min})")]
    TooShort {
        /// Actual length.
        length: usize,
        /// Minimum required length.
        min: usize,
    },

    /// A union of scheme classes needs at least one class index.
    #[error("index set is empty: a union graph needs at least one class")]
    EmptyIndexSet,

    /// The subset is not a stable set, so the bound does not apply.
    #[error("subset is not a stable set")]
    NotStable,

    /// The subset does not attain the bound, so no optimality transfers.
    #[error("subset does not attain the bound")]
    BoundNotAttained,

    /// No eigenspace of the target decomposition matches the implicated
    /// eigenspace of the source.
    #[error("no eigenspace of the target graph matches the implicated eigenspace")]
    EigenspaceMismatch,

    /// The subset makes the bound degenerate (for example `W = V` in the
    /// Cheeger ratio).
    #[error("subset is degenerate for this bound")]
    DegenerateSubset,

    /// A file or string could not be parsed.
    #[error("parse error: {message}")]
    Parse {
        /// Human-readable description of the problem.
        message: String,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
