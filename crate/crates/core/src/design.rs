//! Integration verdicts, design reports, extremality, and rebasing.
//!
//! A design `W` *integrates* a vector `φ` when `mean_W(φ) = mean_V(φ)`, and
//! integrates an eigenspace when it integrates every vector in it —
//! equivalently, when the eigenspace's orthogonal projector annihilates the
//! residual `r = 1_W/|W| − 1/|V|`.  The projector form makes the verdict
//! independent of any basis choice.
//!
//! The *design rank* `k` is the largest number of leading eigenspaces, in
//! some ordering that refines the frequency tie groups, that `W` integrates;
//! ties are resolved in `W`'s favor by listing integrated members of a tie
//! group first.  *Efficacy* is `|W|` divided by the total dimension of that
//! integrated prefix — an exact rational on both arithmetic paths — so lower
//! is better and `efficacy × integrated_dimension = |W|` exactly.
//!
//! On exact (character) eigenspaces the verdict is an integer computation:
//! `W` integrates the span of characters `{χ_a}` iff every character sum
//! `Σ_{w∈W} χ_a(w)` vanishes.  On dense eigenspaces the projected residual
//! is compared against the pinned tolerance.

use nalgebra::DVector;
use num_rational::Rational64;

use crate::chars;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{EigenspaceRep, SpectralDecomposition};
use crate::tolerance::{INTEGRATION_FUNCTIONAL_TOL, RESIDUAL_ZERO_TOL};

/// A nonempty subset of the vertices of a graph, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    vertex_count: usize,
    vertices: Vec<usize>,
}

impl Design {
    /// Build a design on the vertices of `graph`.
    ///
    /// Rejects empty input, out-of-range vertices, and duplicates.
    pub fn new(graph: &Graph, vertices: impl IntoIterator<Item = usize>) -> Result<Design> {
        Design::from_vertex_count(graph.vertex_count(), vertices)
    }

    /// Build a design given only the ambient vertex count (used by the cube
    /// path, where graphs may be too large to materialize).
    pub fn from_vertex_count(
        vertex_count: usize,
        vertices: impl IntoIterator<Item = usize>,
    ) -> Result<Design> {
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::EmptyDesign);
        }
        vertices.sort_unstable();
        for pair in vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex { vertex: pair[0] });
            }
        }
        if let Some(&last) = vertices.last() {
            if last >= vertex_count {
                return Err(Error::OutOfRange {
                    index: last,
                    bound: vertex_count,
                });
            }
        }
        Ok(Design {
            vertex_count,
            vertices,
        })
    }

    /// The sorted vertex list.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of vertices in the design.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false: designs are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of vertices of the ambient graph.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Whether the design contains a vertex.
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Parse a design from free text: comma/whitespace-separated vertex ids,
    /// or (when `cube_bits` is given) binary strings of exactly that length,
    /// little-endian (`"100"` is `e₁`, vertex 1).
    pub fn parse(text: &str, vertex_count: usize, cube_bits: Option<usize>) -> Result<Design> {
        let tokens: Vec<&str> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(Error::EmptyDesign);
        }
        let as_binary_strings = cube_bits.is_some_and(|n| {
            n > 1
                && tokens
                    .iter()
                    .all(|t| t.len() == n && t.bytes().all(|b| b == b'0' || b == b'1'))
        });
        let mut vertices = Vec::with_capacity(tokens.len());
        for token in tokens {
            let v = if as_binary_strings {
                token
                    .bytes()
                    .enumerate()
                    .filter(|&(_, b)| b == b'1')
                    .fold(0usize, |acc, (i, _)| acc | (1 << i))
            } else {
                token.parse::<usize>().map_err(|_| Error::Parse {
                    message: format!("invalid vertex {token:?} in design"),
                })?
            };
            vertices.push(v);
        }
        Design::from_vertex_count(vertex_count, vertices)
    }
}

/// The result of verifying a design against a spectral decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignReport {
    /// Per-eigenspace integration verdicts, in decomposition (frequency)
    /// order.
    pub verdicts: Vec<bool>,
    /// The design rank: `W` is a `k`-design.
    pub k: usize,
    /// An admissible ordering of all eigenspace indices realizing `k` (its
    /// first `k` entries are the integrated prefix).
    pub chosen_order: Vec<usize>,
    /// Total dimension of the integrated prefix.
    pub integrated_dimension: usize,
    /// `|W| / integrated_dimension`, exact; `None` when the integrated
    /// dimension is zero (possible only on non-regular graphs).
    pub efficacy: Option<Rational64>,
    /// Whether the design is extremal: the residual `1_W − (|W|/|V|)·1` is
    /// nonzero and confined to a single nontrivial eigenspace.  Extremality
    /// is defined for regular graphs; reported `false` otherwise.
    pub extremal: bool,
}

fn check_design_matches(decomposition: &SpectralDecomposition, design: &Design) -> Result<()> {
    if design.vertex_count() != decomposition.graph().vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: decomposition.graph().vertex_count(),
            found: design.vertex_count(),
        });
    }
    Ok(())
}

/// Whether `W` integrates a single vector: `mean_W(v) = mean_V(v)`, within
/// [`INTEGRATION_FUNCTIONAL_TOL`] relative to `‖v‖`.
pub fn integrates_vector(
    decomposition: &SpectralDecomposition,
    design: &Design,
    vector: &DVector<f64>,
) -> Result<bool> {
    check_design_matches(decomposition, design)?;
    let n = decomposition.graph().vertex_count();
    if vector.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: vector.len(),
        });
    }
    let norm = vector.norm();
    Ok(averaging_functional(vector, design).abs() <= INTEGRATION_FUNCTIONAL_TOL * norm.max(1e-300))
}

/// `mean_V(v) − mean_W(v)`; a vector is integrated when this vanishes.
fn averaging_functional(vector: &DVector<f64>, design: &Design) -> f64 {
    let mean_all = vector.iter().sum::<f64>() / vector.len() as f64;
    let mean_design =
        design.vertices().iter().map(|&w| vector[w]).sum::<f64>() / design.len() as f64;
    mean_all - mean_design
}

/// Whether `W` integrates the eigenspace at `index` (decomposition order).
///
/// Exact (character) eigenspaces get an exact integer verdict; dense ones
/// compare the projected residual against [`RESIDUAL_ZERO_TOL`].
pub fn integrates_eigenspace(
    decomposition: &SpectralDecomposition,
    design: &Design,
    index: usize,
) -> Result<bool> {
    integrates_eigenspace_with_tolerance(decomposition, design, index, RESIDUAL_ZERO_TOL)
}

/// [`integrates_eigenspace`] with an explicit residual tolerance (floating
/// path only; exact eigenspaces ignore it).
pub fn integrates_eigenspace_with_tolerance(
    decomposition: &SpectralDecomposition,
    design: &Design,
    index: usize,
    residual_tol: f64,
) -> Result<bool> {
    check_design_matches(decomposition, design)?;
    let spaces = decomposition.eigenspaces();
    if index >= spaces.len() {
        return Err(Error::OutOfRange {
            index,
            bound: spaces.len(),
        });
    }
    Ok(eigenspace_verdict(
        decomposition,
        design,
        index,
        residual_tol,
    ))
}

/// Internal verdict; preconditions already checked.
fn eigenspace_verdict(
    decomposition: &SpectralDecomposition,
    design: &Design,
    index: usize,
    residual_tol: f64,
) -> bool {
    let space = &decomposition.eigenspaces()[index];
    let n = decomposition.graph().vertex_count();
    match space.rep() {
        EigenspaceRep::Characters { word_bits } => space
            .classes()
            .iter()
            .all(|&class| chars::weight_class_integrated(*word_bits, class, design.vertices())),
        EigenspaceRep::Dense { projector, .. } => {
            let residual = indicator_residual(n, design);
            (projector * residual).norm() < residual_tol * (n as f64).sqrt()
        }
    }
}

/// `1_W/|W| − 1/|V|` as a dense vector.
fn indicator_residual(n: usize, design: &Design) -> DVector<f64> {
    let mut r = DVector::from_element(n, -1.0 / n as f64);
    let w = design.len() as f64;
    for &v in design.vertices() {
        r[v] += 1.0 / w;
    }
    r
}

/// Verify a design: per-eigenspace verdicts, design rank, efficacy,
/// extremality.
///
/// # Example
///
/// ```
/// use gdesign_core::{design_report, fixture, spectral_decomposition, Design, Fixture};
///
/// let k5 = fixture(Fixture::Complete(5)).unwrap();
/// let d = spectral_decomposition(&k5).unwrap();
/// let w = Design::new(&k5, [0]).unwrap();
/// let report = design_report(&d, &w).unwrap();
/// assert_eq!(report.k, 1); // a single vertex integrates only the trivial eigenspace
/// assert_eq!(report.integrated_dimension, 1);
/// ```
pub fn design_report(
    decomposition: &SpectralDecomposition,
    design: &Design,
) -> Result<DesignReport> {
    design_report_with_tolerance(decomposition, design, RESIDUAL_ZERO_TOL)
}

/// [`design_report`] with an explicit residual tolerance (floating path
/// only; exact eigenspaces ignore it).
pub fn design_report_with_tolerance(
    decomposition: &SpectralDecomposition,
    design: &Design,
    residual_tol: f64,
) -> Result<DesignReport> {
    check_design_matches(decomposition, design)?;
    let verdicts: Vec<bool> = (0..decomposition.eigenspaces().len())
        .map(|i| eigenspace_verdict(decomposition, design, i, residual_tol))
        .collect();
    let dims: Vec<usize> = decomposition
        .eigenspaces()
        .iter()
        .map(|s| s.dimension())
        .collect();
    let ties: Vec<usize> = decomposition
        .eigenspaces()
        .iter()
        .map(|s| s.tie_group())
        .collect();
    Ok(assemble_report(
        &verdicts,
        &dims,
        &ties,
        design.len(),
        decomposition.regular_degree().is_some(),
    ))
}

/// Build a [`DesignReport`] from raw verdicts.  Shared with the cube path.
pub(crate) fn assemble_report(
    verdicts: &[bool],
    dimensions: &[usize],
    tie_groups: &[usize],
    design_size: usize,
    regular: bool,
) -> DesignReport {
    let (k, chosen_order, integrated_dimension) =
        rank_from_verdicts(verdicts, dimensions, tie_groups);
    let efficacy = (integrated_dimension > 0)
        .then(|| Rational64::new(design_size as i64, integrated_dimension as i64));
    let failed = verdicts.iter().filter(|&&v| !v).count();
    DesignReport {
        verdicts: verdicts.to_vec(),
        k,
        chosen_order,
        integrated_dimension,
        efficacy,
        // The residual has a nonzero projection on exactly the eigenspaces
        // that fail, so "confined to one nontrivial eigenspace" is "exactly
        // one failed verdict" (the trivial eigenspace never fails on a
        // regular graph).
        extremal: regular && failed == 1,
    }
}

/// Compute the design rank, an order realizing it, and the integrated
/// prefix dimension.
///
/// Admissible orderings refine the tie-group sequence, so the maximal
/// integrated prefix is found greedily: within each tie group, list the
/// integrated eigenspaces first; the prefix ends inside the first group
/// containing a failure.
fn rank_from_verdicts(
    verdicts: &[bool],
    dimensions: &[usize],
    tie_groups: &[usize],
) -> (usize, Vec<usize>, usize) {
    let group_count = tie_groups.iter().copied().max().map_or(0, |m| m + 1);
    let mut k = 0usize;
    let mut integrated_dimension = 0usize;
    let mut chosen_order = Vec::with_capacity(verdicts.len());
    let mut prefix_open = true;
    for group in 0..group_count {
        let members: Vec<usize> = (0..verdicts.len())
            .filter(|&i| tie_groups[i] == group)
            .collect();
        let (integrated, failed): (Vec<usize>, Vec<usize>) =
            members.iter().partition(|&&i| verdicts[i]);
        if prefix_open {
            k += integrated.len();
            integrated_dimension += integrated.iter().map(|&i| dimensions[i]).sum::<usize>();
            if !failed.is_empty() {
                prefix_open = false;
            }
        }
        chosen_order.extend(integrated);
        chosen_order.extend(failed);
    }
    (k, chosen_order, integrated_dimension)
}

/// Whether the design is extremal: its residual is nonzero and lies in a
/// single nontrivial eigenspace.  Defined for regular graphs only.
pub fn is_extremal(decomposition: &SpectralDecomposition, design: &Design) -> Result<bool> {
    check_design_matches(decomposition, design)?;
    if decomposition.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    let report = design_report(decomposition, design)?;
    Ok(report.extremal)
}

/// Replace an orthonormal eigenbasis by one in which exactly `j` vectors are
/// integrated by the design.
///
/// Any target `0 ≤ j ≤ dim − 1` is achievable when the eigenspace is not
/// fully integrated; a fully integrated eigenspace admits only `j = dim`
/// (in which case the input basis is returned unchanged) and otherwise the
/// call fails with [`Error::FullyIntegrated`].  Unachievable targets fail
/// with [`Error::BadTarget`].
///
/// The construction works by plane rotations, which preserve orthonormality
/// exactly:
///
/// * to *remove* an integrated vector, mix it with a non-integrated partner
///   via `(φ_p ± φ_q)/√2`, leaving both combinations non-integrated;
/// * to *add* one, rotate a non-integrated pair `{φ_p, φ_q}` so that one of
///   the rotated vectors spans the kernel of the averaging functional inside
///   their plane.
///
/// The output lists integrated vectors first.
pub fn rebase(basis: &[DVector<f64>], design: &Design, j: usize) -> Result<Vec<DVector<f64>>> {
    if basis.is_empty() {
        return Err(Error::TooShort { length: 0, min: 1 });
    }
    let n = design.vertex_count();
    for v in basis {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    for (i, v) in basis.iter().enumerate() {
        if (v.norm() - 1.0).abs() > 1e-6 {
            return Err(Error::NotOrthonormal {
                context: format!("vector {i} has norm {:.6}", v.norm()),
            });
        }
        for (l, u) in basis.iter().enumerate().take(i) {
            if u.dot(v).abs() > 1e-6 {
                return Err(Error::NotOrthonormal {
                    context: format!("vectors {l} and {i} are not orthogonal"),
                });
            }
        }
    }

    let dim = basis.len();
    let functional = |v: &DVector<f64>| averaging_functional(v, design);
    let is_integrated = |v: &DVector<f64>| functional(v).abs() <= INTEGRATION_FUNCTIONAL_TOL;

    let mut vectors: Vec<DVector<f64>> = basis.to_vec();
    let fully = vectors.iter().all(&is_integrated);
    if fully {
        return if j == dim {
            Ok(vectors)
        } else {
            Err(Error::FullyIntegrated { dimension: dim })
        };
    }
    if j >= dim {
        return Err(Error::BadTarget {
            requested: j,
            dimension: dim,
        });
    }

    loop {
        let flags: Vec<bool> = vectors.iter().map(&is_integrated).collect();
        let count = flags.iter().filter(|&&f| f).count();
        match count.cmp(&j) {
            std::cmp::Ordering::Equal => break,
            std::cmp::Ordering::Greater => {
                // Mix one integrated vector with a non-integrated partner.
                let p = flags
                    .iter()
                    .position(|&f| !f)
                    .expect("not fully integrated");
                let q = flags.iter().position(|&f| f).expect("count > j ≥ 0");
                let scale = std::f64::consts::FRAC_1_SQRT_2;
                let plus = (&vectors[p] + &vectors[q]) * scale;
                let minus = (&vectors[p] - &vectors[q]) * scale;
                vectors[p] = plus;
                vectors[q] = minus;
            }
            std::cmp::Ordering::Less => {
                // Rotate a non-integrated pair so one member lands in the
                // kernel of the functional.  Two non-integrated vectors
                // exist whenever count < j ≤ dim − 1.
                let mut it = flags.iter().enumerate().filter(|&(_, &f)| !f);
                let p = it.next().expect("non-integrated vector").0;
                let q = it.next().expect("second non-integrated vector").0;
                let (a_p, a_q) = (functional(&vectors[p]), functional(&vectors[q]));
                // v = φ_p/a_p − φ_q/a_q has functional 0; normalize, then
                // complete the plane with the orthogonal complement of v.
                let v = &vectors[p] / a_p - &vectors[q] / a_q;
                let v = &v / v.norm();
                let mut w = vectors[p].clone();
                let c = v.dot(&w);
                w.axpy(-c, &v, 1.0);
                let w = &w / w.norm();
                vectors[p] = v;
                vectors[q] = w;
            }
        }
    }

    // Integrated vectors first.
    let (mut integrated, rest): (Vec<DVector<f64>>, Vec<DVector<f64>>) =
        vectors.into_iter().partition(|v| is_integrated(v));
    integrated.extend(rest);
    Ok(integrated)
}
