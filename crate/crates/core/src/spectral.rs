//! Eigenspaces and spectral decompositions of the normalized Laplacian.
//!
//! The operator is `L = AD⁻¹ − I`, acting on column vectors; its spectrum
//! lies in `[−2, 0]`, with the *trivial* eigenvalue 0 attained by the degree
//! vector.  For a non-regular graph `AD⁻¹` is not symmetric, so eigenvectors
//! are computed through the symmetrization `S = D^{−1/2} A D^{−1/2}` (an
//! eigenvector `u` of `S` maps to the eigenvector `D^{1/2} u` of `AD⁻¹`) and
//! eigenspaces are *not* mutually orthogonal.  Verdicts therefore always go
//! through each eigenspace's own orthogonal projector, which is independent
//! of the computed basis.
//!
//! Eigenspaces are stored in **frequency order**: descending `|λ + 1|`
//! (smoothest first), with exact ties — `λ + 1 = ±c` — forming *tie groups*
//! whose members are interchangeable in any admissible ordering.  Within a
//! tie group, storage order is by descending eigenvalue.
//!
//! Exact constructors ([`crate::cube`], [`crate::schemes`]) build their
//! eigenspaces from characters with exact rational eigenvalues; this module
//! hosts the shared [`Eigenspace`] type and the assembly/ordering logic.

use nalgebra::{DMatrix, DVector};
use num_integer::binomial;
use num_rational::Rational64;

use crate::chars;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::tolerance::{
    EIGENVALUE_GROUPING_ABS_TOL, GROUPING_AMBIGUITY_FACTOR, TIE_GROUP_MERGE_TOL,
};

/// How an eigenspace stores its span.
#[derive(Clone, Debug)]
pub(crate) enum EigenspaceRep {
    /// Orthonormal basis and dense orthogonal projector.
    Dense {
        basis: Vec<DVector<f64>>,
        projector: DMatrix<f64>,
    },
    /// Span of cube characters `χ_a` with `wt(a)` in the eigenspace's class
    /// list; basis and projector are materialized on demand.
    Characters {
        /// Number of cube coordinates (vertices are `0..2^word_bits`).
        word_bits: usize,
    },
}

/// One eigenspace of the normalized Laplacian.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    eigenvalue: Scalar,
    dimension: usize,
    tie_group: usize,
    classes: Vec<usize>,
    rep: EigenspaceRep,
}

impl Eigenspace {
    /// Build a dense (floating) eigenspace.  `classes` is an optional
    /// annotation (scheme class indices); pass an empty vector otherwise.
    pub(crate) fn dense(
        eigenvalue: Scalar,
        classes: Vec<usize>,
        basis: Vec<DVector<f64>>,
        projector: DMatrix<f64>,
    ) -> Eigenspace {
        Eigenspace {
            eigenvalue,
            dimension: basis.len(),
            tie_group: 0,
            classes,
            rep: EigenspaceRep::Dense { basis, projector },
        }
    }

    /// Build an exact character eigenspace spanning the weight classes in
    /// `classes` of the `word_bits`-cube.
    pub(crate) fn characters(
        laplacian_eigenvalue: Rational64,
        word_bits: usize,
        classes: Vec<usize>,
    ) -> Eigenspace {
        let dimension = classes
            .iter()
            .map(|&i| binomial(word_bits as u64, i as u64) as usize)
            .sum();
        Eigenspace {
            eigenvalue: Scalar::Exact(laplacian_eigenvalue),
            dimension,
            tie_group: 0,
            classes,
            rep: EigenspaceRep::Characters { word_bits },
        }
    }

    /// The eigenvalue `λ` of `L = AD⁻¹ − I`.
    pub fn eigenvalue(&self) -> Scalar {
        self.eigenvalue
    }

    /// The corresponding eigenvalue `λ + 1` of the random-walk matrix `AD⁻¹`.
    pub fn random_walk_eigenvalue(&self) -> Scalar {
        self.eigenvalue.plus_one()
    }

    /// Dimension of the eigenspace.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Index of this eigenspace's tie group in the frequency order (groups
    /// are numbered 0, 1, … from smoothest to most oscillatory).
    pub fn tie_group(&self) -> usize {
        self.tie_group
    }

    /// Structural annotation: cube weight classes or association-scheme
    /// class indices merged into this eigenspace.  Empty for generic graphs.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    /// Whether the eigenspace carries exact (character) arithmetic.
    pub fn is_exact(&self) -> bool {
        matches!(self.rep, EigenspaceRep::Characters { .. })
    }

    pub(crate) fn rep(&self) -> &EigenspaceRep {
        &self.rep
    }

    pub(crate) fn set_tie_group(&mut self, tie: usize) {
        self.tie_group = tie;
    }

    /// An orthonormal basis of the eigenspace (generated on demand for
    /// character eigenspaces).
    pub fn basis(&self) -> Vec<DVector<f64>> {
        match &self.rep {
            EigenspaceRep::Dense { basis, .. } => basis.clone(),
            EigenspaceRep::Characters { word_bits } => {
                chars::character_basis(*word_bits, &self.classes)
            }
        }
    }

    /// The orthogonal projector onto the eigenspace, materialized densely.
    pub fn projector(&self) -> DMatrix<f64> {
        match &self.rep {
            EigenspaceRep::Dense { projector, .. } => projector.clone(),
            EigenspaceRep::Characters { word_bits } => {
                chars::character_projector(*word_bits, &self.classes)
            }
        }
    }

    /// Apply the orthogonal projector to a vector.
    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        match &self.rep {
            EigenspaceRep::Dense { projector, .. } => projector * v,
            EigenspaceRep::Characters { word_bits } => {
                let size = 1usize << word_bits;
                let scale = 1.0 / size as f64;
                let mut out = DVector::zeros(size);
                for &class in &self.classes {
                    for a in chars::words_of_weight(*word_bits, class) {
                        let coefficient: f64 = (0..size)
                            .map(|x| chars::character_value(a, x) as f64 * v[x])
                            .sum();
                        for x in 0..size {
                            out[x] += chars::character_value(a, x) as f64 * coefficient * scale;
                        }
                    }
                }
                out
            }
        }
    }
}

/// A full spectral decomposition of a graph's normalized Laplacian, with
/// eigenspaces stored in frequency order.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    graph: Graph,
    eigenspaces: Vec<Eigenspace>,
    regular_degree: Option<usize>,
}

impl SpectralDecomposition {
    /// The underlying graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The eigenspaces in frequency order (descending `|λ + 1|`).
    pub fn eigenspaces(&self) -> &[Eigenspace] {
        &self.eigenspaces
    }

    /// `Some(d)` when the graph is `d`-regular.
    pub fn regular_degree(&self) -> Option<usize> {
        self.regular_degree
    }

    /// Whether every eigenvalue (and eigenspace) is exact.
    pub fn is_exact(&self) -> bool {
        self.eigenspaces.iter().all(Eigenspace::is_exact)
    }

    /// The frequency ordering as tie groups of eigenspace indices.
    ///
    /// Groups are listed smoothest first; eigenspaces inside one group share
    /// `|λ + 1|` and may be permuted freely in an admissible ordering.
    pub fn frequency_order(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (index, space) in self.eigenspaces.iter().enumerate() {
            if space.tie_group() == groups.len() {
                groups.push(Vec::new());
            }
            groups[space.tie_group()].push(index);
        }
        groups
    }

    /// Index of the trivial eigenspace (random-walk eigenvalue 1, spanned by
    /// the degree vector).  Always 0 in frequency order.
    pub fn trivial_eigenspace(&self) -> usize {
        self.eigenspaces
            .iter()
            .position(|s| {
                s.random_walk_eigenvalue()
                    .approx_eq(Scalar::Exact(Rational64::new(1, 1)))
            })
            .expect("connected graph has a trivial eigenspace")
    }
}

/// The frequency ordering of a decomposition as tie groups of eigenspace
/// indices (free-function form of
/// [`SpectralDecomposition::frequency_order`]).
pub fn frequency_order(decomposition: &SpectralDecomposition) -> Vec<Vec<usize>> {
    decomposition.frequency_order()
}

/// Compute the spectral decomposition of a graph on the floating path.
///
/// Eigenvalues are grouped with the pinned tolerances; an ambiguous gap —
/// one that neither clearly merges nor clearly separates — raises
/// [`Error::NumericalFailure`] rather than guessing.
///
/// # Example
///
/// ```
/// use gdesign_core::{fixture, spectral_decomposition, Fixture};
///
/// let petersen = fixture(Fixture::Petersen).unwrap();
/// let d = spectral_decomposition(&petersen).unwrap();
/// let dims: Vec<usize> = d.eigenspaces().iter().map(|s| s.dimension()).collect();
/// assert_eq!(dims, vec![1, 4, 5]);
/// ```
pub fn spectral_decomposition(graph: &Graph) -> Result<SpectralDecomposition> {
    let n = graph.vertex_count();
    let sqrt_deg: Vec<f64> = (0..n).map(|v| (graph.degree(v) as f64).sqrt()).collect();

    // Symmetrization S = D^{-1/2} A D^{-1/2}; its eigenvalues equal those of
    // AD⁻¹ and an eigenvector u of S maps to the eigenvector D^{1/2} u.
    let mut s = graph.adjacency_matrix();
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] /= sqrt_deg[i] * sqrt_deg[j];
        }
    }
    let eigen = s.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
    let sorted_values: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();

    let groups = group_descending(&sorted_values, EIGENVALUE_GROUPING_ABS_TOL)?;
    let mut spaces = Vec::with_capacity(groups.len());
    for group in groups {
        let members = &order[group.clone()];
        let mu = sorted_values[group.clone()].iter().sum::<f64>() / members.len() as f64;
        let raw: Vec<DVector<f64>> = members
            .iter()
            .map(|&col| DVector::from_fn(n, |i, _| eigen.eigenvectors[(i, col)] * sqrt_deg[i]))
            .collect();
        let count = raw.len();
        let basis = orthonormalize(raw);
        if basis.len() != count {
            return Err(Error::NumericalFailure {
                context: format!("orthonormalization lost rank in the eigenspace near {mu:.6}"),
            });
        }
        let mut projector = DMatrix::zeros(n, n);
        for q in &basis {
            projector += q * q.transpose();
        }
        spaces.push(Eigenspace::dense(
            Scalar::Approx(mu - 1.0),
            Vec::new(),
            basis,
            projector,
        ));
    }

    finalize_decomposition(graph.clone(), spaces)
}

/// Sort eigenspaces into frequency order, assign tie groups, and wrap the
/// result.  Shared by the floating path and the exact constructors.
pub(crate) fn finalize_decomposition(
    graph: Graph,
    mut spaces: Vec<Eigenspace>,
) -> Result<SpectralDecomposition> {
    // Descending |λ+1|; inside a tie, descending λ+1 (positive half first).
    spaces.sort_by(|a, b| {
        let (abs_a, abs_b) = (
            a.random_walk_eigenvalue().abs(),
            b.random_walk_eigenvalue().abs(),
        );
        abs_b.total_cmp(abs_a).then_with(|| {
            b.random_walk_eigenvalue()
                .total_cmp(a.random_walk_eigenvalue())
        })
    });

    let mut tie = 0usize;
    for i in 0..spaces.len() {
        if i > 0 {
            let prev = spaces[i - 1].random_walk_eigenvalue().abs();
            let cur = spaces[i].random_walk_eigenvalue().abs();
            let same = match (prev, cur) {
                (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
                _ => {
                    let gap = (prev.to_f64() - cur.to_f64()).abs();
                    if (TIE_GROUP_MERGE_TOL..TIE_GROUP_MERGE_TOL * GROUPING_AMBIGUITY_FACTOR)
                        .contains(&gap)
                    {
                        return Err(Error::NumericalFailure {
                            context: format!(
                                "ambiguous tie-group gap {gap:.3e} between |λ+1| values"
                            ),
                        });
                    }
                    gap < TIE_GROUP_MERGE_TOL
                }
            };
            if !same {
                tie += 1;
            }
        }
        spaces[i].tie_group = tie;
    }

    // The strict sort above can order a tie group by sub-tolerance noise in
    // |λ+1|; re-sort each tie group by descending λ+1 so storage order is
    // deterministic (positive half first).
    let mut start = 0usize;
    while start < spaces.len() {
        let group = spaces[start].tie_group;
        let mut end = start + 1;
        while end < spaces.len() && spaces[end].tie_group == group {
            end += 1;
        }
        spaces[start..end].sort_by(|a, b| {
            b.random_walk_eigenvalue()
                .to_f64()
                .total_cmp(&a.random_walk_eigenvalue().to_f64())
        });
        start = end;
    }

    let total: usize = spaces.iter().map(Eigenspace::dimension).sum();
    if total != graph.vertex_count() {
        return Err(Error::NumericalFailure {
            context: format!(
                "eigenspace dimensions sum to {total}, expected {}",
                graph.vertex_count()
            ),
        });
    }

    let regular_degree = graph.regular_degree();
    Ok(SpectralDecomposition {
        graph,
        eigenspaces: spaces,
        regular_degree,
    })
}

/// Group a descending list of floats into runs of equal values.
///
/// Adjacent values closer than `tol` merge; gaps inside
/// `[tol, GROUPING_AMBIGUITY_FACTOR * tol)` are ambiguous and raise
/// [`Error::NumericalFailure`].
pub(crate) fn group_descending(values: &[f64], tol: f64) -> Result<Vec<std::ops::Range<usize>>> {
    let mut groups = Vec::new();
    let mut start = 0usize;
    for i in 1..=values.len() {
        let split = if i == values.len() {
            true
        } else {
            let gap = values[i - 1] - values[i];
            if (tol..tol * GROUPING_AMBIGUITY_FACTOR).contains(&gap) {
                return Err(Error::NumericalFailure {
                    context: format!("ambiguous eigenvalue gap {gap:.3e}"),
                });
            }
            gap >= tol
        };
        if split {
            groups.push(start..i);
            start = i;
        }
    }
    Ok(groups)
}

/// Modified Gram–Schmidt with a re-orthogonalization pass.  Vectors that
/// collapse below `1e-10` in norm are dropped.
pub(crate) fn orthonormalize(vectors: Vec<DVector<f64>>) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for mut v in vectors {
        for _pass in 0..2 {
            for q in &out {
                let c = q.dot(&v);
                v.axpy(-c, q, 1.0);
            }
        }
        let norm = v.norm();
        if norm > 1e-10 {
            out.push(v / norm);
        }
    }
    out
}
