//! Graphical designs on graphs: vertex subsets that exactly average
//! eigenvectors of the normalized graph Laplacian.
//!
//! A nonempty subset `W ⊆ V` of a connected graph `G = (V, E)` *integrates* a
//! function `φ : V → ℝ` when the average of `φ` over `W` equals its average
//! over all of `V`.  The functions of interest are eigenvectors of the
//! normalized Laplacian `L = AD⁻¹ − I`, whose eigenvalues lie in `[−2, 0]`.
//! Ordering eigenspaces from smoothest to most oscillatory (descending
//! `|λ + 1|`), a *k-design* integrates the first `k` eigenspaces in some
//! admissible ordering, and its *efficacy* `|W| / (integrated dimension)`
//! measures how much averaging power each design vertex buys.
//!
//! The crate provides the machinery to construct, verify, certify, and search
//! for such designs, together with the combinatorial structures they interact
//! with:
//!
//! | module        | contents                                                        |
//! |---------------|-----------------------------------------------------------------|
//! | [`graph`]     | graph construction, named fixtures, JSON interchange            |
//! | [`spectral`]  | eigenspaces, spectral decompositions, frequency ordering        |
//! | [`design`]    | integration verdicts, design reports, extremality, rebasing     |
//! | [`codes`]     | GF(2) linear codes: Hamming family, duals, lifts, projections,  |
//! |               | orthogonal-array strength                                       |
//! | [`cube`]      | distance-`d` cube graphs with exact character arithmetic        |
//! | [`schemes`]   | Hamming and Johnson association schemes, Delsarte designs       |
//! | [`bounds`]    | Hoffman/Cheeger certificates, stable sets, exhaustive search    |
//! | [`mod@reference`] | bundled reference tables and their reproduction checks      |
//!
//! # Arithmetic modes
//!
//! Constructions with closed-form spectra (cube graphs, the Hamming scheme)
//! carry exact rational eigenvalues and character-based eigenspaces; their
//! integration verdicts are computed in integer arithmetic and are exact.
//! Everything else uses a floating eigendecomposition with the pinned
//! tolerances in [`tolerance`].  Efficacies are exact rationals on both paths.
//!
//! # Example
//!
//! Verify that the two antipodal vertices `{000, 111}` form a 3-design in the
//! cube graph `Q₃` with efficacy `2/5`:
//!
//! ```
//! use gdesign_core::{cube_design_report, Rational64};
//!
//! let report = cube_design_report(3, 1, &[0b000, 0b111]).unwrap();
//! assert_eq!(report.report.k, 3);
//! assert_eq!(report.report.efficacy, Some(Rational64::new(2, 5)));
//! assert!(report.report.extremal);
//! ```

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod bounds;
pub(crate) mod chars;
pub mod codes;
pub mod cube;
pub mod design;
pub mod error;
pub mod graph;
pub mod reference;
pub mod scalar;
pub mod schemes;
pub mod spectral;
pub mod tolerance;

pub use bounds::{
    cheeger_ratio, cheeger_sharp, exhaustive_design_search,
    exhaustive_design_search_with_tolerance, hoffman_bound, hoffman_certificate, is_stable_set,
    max_stable_set, via_hoffman_optimality, BoundCertificate, BoundKind, HoffmanOptimality,
    SearchResult, StableSetResult,
};
pub use codes::{
    code_from_check_matrix, double_lift, dual, hamming, lift, orthogonal_array_strength,
    predicted_unintegrated_weights, project, BinaryLinearCode, BinaryMatrix, OrthogonalArrayReport,
};
pub use cube::{
    cube_decomposition, cube_design_report, cube_eigenspace, cube_graph, krawtchouk, simple_design,
    CubeDesignReport, CubeEigenspaceInfo, CubeGraph,
};
pub use design::{
    design_report, design_report_with_tolerance, integrates_eigenspace, integrates_vector,
    is_extremal, rebase, Design, DesignReport,
};
pub use error::{Error, Result};
pub use graph::{build_graph, fixture, Fixture, Graph};
pub use scalar::Scalar;
pub use schemes::{
    classical_t_design, hamming_scheme, johnson_points, johnson_scheme, scheme_decomposition,
    t_design_strength, union_graph, AssociationScheme, BlockFamily, SchemeKind,
};
pub use spectral::{frequency_order, spectral_decomposition, Eigenspace, SpectralDecomposition};

/// Exact rational numbers used for eigenvalues, efficacies, and bounds.
pub use num_rational::Rational64;
