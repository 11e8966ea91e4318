//! Pinned numerical tolerances for the floating-point path.
//!
//! Every tolerance used by the crate lives here so the acceptance and
//! property suites exercise exactly the constants shipped in release builds.
//! Exact (rational/character) paths ignore these entirely: their zero tests
//! are integer comparisons.
//!
//! The gap structure of the supported fixtures is what justifies the values:
//! the smallest true eigenvalue gap among the bundled graphs and schemes is
//! `1/42` (truncated tetrahedron), ten orders of magnitude above the grouping
//! tolerance, while double-precision eigensolvers on these desk-scale
//! matrices deliver residuals near `1e-14`.

/// Absolute tolerance for grouping floating eigenvalues into eigenspaces.
///
/// Two sorted eigenvalues within this distance are treated as equal.  A gap
/// that lands in the ambiguous band
/// `[EIGENVALUE_GROUPING_ABS_TOL, GROUPING_AMBIGUITY_FACTOR * EIGENVALUE_GROUPING_ABS_TOL)`
/// aborts with a numerical-failure error instead of guessing.
pub const EIGENVALUE_GROUPING_ABS_TOL: f64 = 1e-9;

/// Absolute tolerance for merging `|λ + 1|` values into tie groups of the
/// frequency ordering.  Uses the same ambiguity guard as eigenvalue grouping.
pub const TIE_GROUP_MERGE_TOL: f64 = 1e-9;

/// Multiplier defining the ambiguous band above a grouping tolerance.
///
/// Gaps below the tolerance merge; gaps at or above `factor * tolerance`
/// separate; anything in between is reported as a numerical failure because
/// the answer would depend on floating noise.
pub const GROUPING_AMBIGUITY_FACTOR: f64 = 10.0;

/// A projected residual `‖P · r‖` counts as zero when it is below
/// `RESIDUAL_ZERO_TOL * sqrt(dimension)`, where `dimension` is the number of
/// vertices.  The `sqrt` scaling keeps the verdict threshold proportional to
/// the norm a noise vector of that length would have.
pub const RESIDUAL_ZERO_TOL: f64 = 1e-8;

/// An idempotent annihilation test `J_i · 1_Y = 0` counts as zero when
/// `‖J_i · 1_Y‖ < IDEMPOTENT_ANNIHILATION_TOL * sqrt(|X|)` on the floating
/// path (Johnson schemes).  The Hamming scheme uses exact character sums.
pub const IDEMPOTENT_ANNIHILATION_TOL: f64 = 1e-8;

/// A unit vector `v` counts as integrated by `W` when the averaging
/// functional `|mean_V(v) − mean_W(v)|` is below this value times `‖v‖`.
pub const INTEGRATION_FUNCTIONAL_TOL: f64 = 1e-8;

/// Grouping tolerance for eigenvalues of scheme relation matrices.
///
/// Johnson-graph eigenvalues are integers with gaps of at least 1, so a much
/// coarser (and therefore safer) threshold than
/// [`EIGENVALUE_GROUPING_ABS_TOL`] is appropriate when indexing idempotents.
pub const SCHEME_EIGENVALUE_GROUP_TOL: f64 = 1e-6;

/// Two dense projectors describe the same eigenspace when the largest entry
/// of their difference is below this value (used when transferring a bound
/// certificate from one graph to another).
pub const PROJECTOR_MATCH_TOL: f64 = 1e-8;

/// Floating comparisons of scalar quantities (bound attainment, reference
/// table reproduction) use this absolute tolerance.
pub const VALUE_COMPARE_TOL: f64 = 1e-9;
