//! Spectral bounds and certificates: the stable-set ratio bound, the
//! isoperimetric (Cheeger) inequality, exact maximum-stable-set search,
//! exhaustive optimal-design search, and optimality transfer between
//! graphs that share eigenspaces.
//!
//! Both bounds are driven by the random-walk spectrum `μ₁ = 1 > μ₂ ≥ … ≥
//! μ_min` of `AD⁻¹` on a regular graph:
//!
//! * **Ratio bound**: a stable set `W` has `|W|/|V| ≤ −μ_min/(1 − μ_min)`.
//!   When equality holds, the residual `1_W/|W| − 1/|V|` is confined to
//!   the `μ_min` eigenspace — so `W` integrates every other eigenspace,
//!   and that transfers to any graph sharing the eigenspaces
//!   ([`via_hoffman_optimality`]).
//! * **Cheeger inequality**: every nonempty proper `W` has
//!   `|V|·cut(W)/(d·|W|·|W̄|) ≥ 1 − μ₂`, with sharpness again pinning the
//!   residual to an eigenspace (here `μ₂`).
//!
//! Certificates are exact whenever the decomposition carries exact
//! eigenvalues: subset ratios are rational by construction, so equality is
//! decided in integer arithmetic, never by float comparison.

use nalgebra::DVector;
use num_rational::Rational64;

use crate::design::{assemble_report, design_report, Design, DesignReport};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::spectral::SpectralDecomposition;
use crate::tolerance::{PROJECTOR_MATCH_TOL, RESIDUAL_ZERO_TOL};

/// Cap on the number of subsets an exhaustive design search will visit.
pub const MAX_SEARCH_SUBSETS: u64 = 100_000_000;

/// Which spectral bound a certificate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// Stable-set ratio bound `|W|/|V| ≤ −μ_min/(1 − μ_min)`.
    Hoffman,
    /// Isoperimetric bound `|V|·cut/(d·|W|·|W̄|) ≥ 1 − μ₂`.
    Cheeger,
}

/// A checked instance of a spectral bound on one subset.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCertificate {
    /// Which bound was checked.
    pub kind: BoundKind,
    /// The spectral side of the inequality (exact when the decomposition
    /// carries an exact extreme eigenvalue).
    pub bound: Scalar,
    /// The combinatorial side: `|W|/|V|` for the ratio bound, the cut
    /// ratio for Cheeger.  Always exact.
    pub ratio: Rational64,
    /// The subset, sorted ascending.
    pub subset: Vec<usize>,
    /// Whether the inequality is tight for this subset.
    pub attained: bool,
    /// Storage index of the extreme eigenspace when the bound is attained;
    /// sharpness confines the subset's residual to this eigenspace (which
    /// is verified, not assumed).
    pub implicated_eigenspace: Option<usize>,
}

/// Result of an exact maximum-stable-set computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSetResult {
    /// The stability number `α`.
    pub size: usize,
    /// Every maximum stable set, each sorted, in lexicographic order.
    pub witnesses: Vec<Vec<usize>>,
}

/// Result of an exhaustive design search over small vertex subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// The minimum efficacy found, `None` if no examined subset integrated
    /// anything (possible only on irregular graphs).
    pub best_efficacy: Option<Rational64>,
    /// Every subset attaining the minimum, in enumeration order
    /// (increasing size, colexicographic within a size).
    pub witnesses: Vec<Vec<usize>>,
    /// How many subsets were examined.
    pub subsets_examined: u64,
    /// Whether the search covered every nonempty proper subset.
    pub exhaustive: bool,
}

/// Outcome of transferring a sharp ratio-bound certificate to another
/// graph with the same eigenspaces.
#[derive(Clone, Debug, PartialEq)]
pub struct HoffmanOptimality {
    /// The sharp certificate on the source graph.
    pub certificate: BoundCertificate,
    /// Storage index of the eigenspace of the *target* decomposition that
    /// contains the source's implicated eigenspace.
    pub target_eigenspace: usize,
    /// The design report on the target graph; its only failed verdict is
    /// `target_eigenspace`.
    pub report: DesignReport,
    /// Whether the implicated eigenspace sits in the last tie group of the
    /// target's frequency order — the case in which sharpness makes the
    /// subset an optimal design there.
    pub implicated_last: bool,
}

/// The ratio bound on the relative size of a stable set:
/// `α(G)/|V| ≤ −μ_min/(1 − μ_min)`.
///
/// Exact (`Scalar::Exact`) whenever the least random-walk eigenvalue is
/// exact.  Errors with [`Error::NotRegular`] on irregular graphs.
pub fn hoffman_bound(decomposition: &SpectralDecomposition) -> Result<Scalar> {
    if decomposition.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    let least = least_eigenvalue(decomposition);
    Ok(match least {
        Scalar::Exact(mu) => {
            // −μ/(1−μ) with μ = p/q (q > 0, p < q): equals −p/(q−p).
            let (p, q) = (*mu.numer(), *mu.denom());
            Scalar::Exact(Rational64::new(-p, q - p))
        }
        Scalar::Approx(mu) => Scalar::Approx(-mu / (1.0 - mu)),
    })
}

/// The least random-walk eigenvalue of the decomposition.
fn least_eigenvalue(decomposition: &SpectralDecomposition) -> Scalar {
    decomposition
        .eigenspaces()
        .iter()
        .map(|s| s.random_walk_eigenvalue())
        .min_by(|a, b| a.total_cmp(*b))
        .expect("decompositions are nonempty")
}

/// Storage index of the eigenspace with the least random-walk eigenvalue.
fn least_eigenvalue_index(decomposition: &SpectralDecomposition) -> usize {
    (0..decomposition.eigenspaces().len())
        .min_by(|&a, &b| {
            let spaces = decomposition.eigenspaces();
            spaces[a]
                .random_walk_eigenvalue()
                .total_cmp(spaces[b].random_walk_eigenvalue())
        })
        .expect("decompositions are nonempty")
}

/// Whether `subset` is a stable (independent) set: no two of its vertices
/// are adjacent.  Validates the subset like a design (nonempty, in range,
/// no duplicates).
pub fn is_stable_set(graph: &Graph, subset: &[usize]) -> Result<bool> {
    let design = Design::new(graph, subset.iter().copied())?;
    let vertices = design.vertices();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            if graph.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact maximum stable set via branch and bound on 64-bit vertex masks,
/// together with *every* witness of maximum size.
///
/// Requires at most 64 vertices ([`Error::TooLarge`] otherwise).  Witness
/// enumeration is exponential in the worst case but instant on the graph
/// families treated here.
pub fn max_stable_set(graph: &Graph) -> Result<StableSetResult> {
    let neighbors = graph.neighbor_masks()?;
    let n = graph.vertex_count();
    let all = if n == 64 { !0u64 } else { (1u64 << n) - 1 };

    let mut best = 0usize;
    alpha(&neighbors, all, 0, &mut best);

    let mut witnesses = Vec::new();
    collect_witnesses(&neighbors, all, 0, 0u64, best, &mut witnesses);
    let witnesses = witnesses
        .into_iter()
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    Ok(StableSetResult {
        size: best,
        witnesses,
    })
}

/// Branch-and-bound stability number over the candidate mask.
fn alpha(neighbors: &[u64], candidates: u64, current: usize, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(current);
        return;
    }
    if current + candidates.count_ones() as usize <= *best {
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    let bit = 1u64 << v;
    // Isolated-in-candidates vertices are always included.
    if neighbors[v] & candidates == 0 {
        alpha(neighbors, candidates & !bit, current + 1, best);
        return;
    }
    alpha(
        neighbors,
        candidates & !bit & !neighbors[v],
        current + 1,
        best,
    );
    alpha(neighbors, candidates & !bit, current, best);
}

/// Record every stable set of size exactly `target` (mask form).
fn collect_witnesses(
    neighbors: &[u64],
    candidates: u64,
    current: usize,
    chosen: u64,
    target: usize,
    out: &mut Vec<u64>,
) {
    if current == target {
        out.push(chosen);
        return;
    }
    if candidates == 0 || current + (candidates.count_ones() as usize) < target {
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    let bit = 1u64 << v;
    collect_witnesses(
        neighbors,
        candidates & !bit & !neighbors[v],
        current + 1,
        chosen | bit,
        target,
        out,
    );
    collect_witnesses(neighbors, candidates & !bit, current, chosen, target, out);
}

/// Validate a subset and return (sorted subset, membership bools),
/// rejecting the full vertex set.
fn proper_subset(graph: &Graph, subset: &[usize]) -> Result<(Vec<usize>, Vec<bool>)> {
    let design = Design::new(graph, subset.iter().copied())?;
    let n = graph.vertex_count();
    if design.len() == n {
        return Err(Error::DegenerateSubset);
    }
    let mut inside = vec![false; n];
    for &v in design.vertices() {
        inside[v] = true;
    }
    Ok((design.vertices().to_vec(), inside))
}

/// The exact isoperimetric ratio `|V|·cut(W) / (d·|W|·|W̄|)` of a nonempty
/// proper subset of a `d`-regular graph.
pub fn cheeger_ratio(graph: &Graph, subset: &[usize]) -> Result<Rational64> {
    let degree = graph.regular_degree().ok_or(Error::NotRegular)?;
    let (vertices, inside) = proper_subset(graph, subset)?;
    let n = graph.vertex_count() as i64;
    let w = vertices.len() as i64;
    let cut = graph.boundary_edge_count(&inside) as i64;
    Ok(Rational64::new(n * cut, degree as i64 * w * (n - w)))
}

/// Whether the Cheeger inequality `ratio ≥ 1 − μ₂` is tight for this
/// subset (`μ₂` = second-largest random-walk eigenvalue).
///
/// Exact comparison when `μ₂` is exact; within the value-comparison
/// tolerance on the floating path.
pub fn cheeger_sharp(decomposition: &SpectralDecomposition, subset: &[usize]) -> Result<bool> {
    let ratio = cheeger_ratio(decomposition.graph(), subset)?;
    let trivial = decomposition.trivial_eigenspace();
    let mu2 = decomposition
        .eigenspaces()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != trivial)
        .map(|(_, s)| s.random_walk_eigenvalue())
        .max_by(|a, b| a.total_cmp(*b))
        .expect("graphs on ≥ 2 vertices have a nontrivial eigenspace");
    let target = match mu2 {
        Scalar::Exact(mu) => Scalar::Exact(Rational64::new(1, 1) - mu),
        Scalar::Approx(mu) => Scalar::Approx(1.0 - mu),
    };
    Ok(Scalar::Exact(ratio).approx_eq(target))
}

/// Check the ratio bound on a stable set and certify whether it is
/// attained.
///
/// Errors with [`Error::NotStable`] when the subset spans an edge.  On a
/// sharp certificate the implicated eigenspace is recorded and the
/// residual's confinement to it is verified numerically
/// ([`Error::NumericalFailure`] if that consistency check fails).
pub fn hoffman_certificate(
    decomposition: &SpectralDecomposition,
    subset: &[usize],
) -> Result<BoundCertificate> {
    let bound = hoffman_bound(decomposition)?;
    let graph = decomposition.graph();
    if !is_stable_set(graph, subset)? {
        return Err(Error::NotStable);
    }
    let design = Design::new(graph, subset.iter().copied())?;
    let n = graph.vertex_count();
    let ratio = Rational64::new(design.len() as i64, n as i64);
    let attained = Scalar::Exact(ratio).approx_eq(bound);

    let implicated_eigenspace = if attained {
        let index = least_eigenvalue_index(decomposition);
        let mut residual = DVector::from_element(n, -1.0 / n as f64);
        for &v in design.vertices() {
            residual[v] += 1.0 / design.len() as f64;
        }
        let space = &decomposition.eigenspaces()[index];
        if (space.project(&residual) - &residual).norm() > RESIDUAL_ZERO_TOL * (n as f64).sqrt() {
            return Err(Error::NumericalFailure {
                context: "sharp ratio bound did not confine the residual \
                          to the least eigenspace"
                    .to_string(),
            });
        }
        Some(index)
    } else {
        None
    };

    Ok(BoundCertificate {
        kind: BoundKind::Hoffman,
        bound,
        ratio,
        subset: design.vertices().to_vec(),
        attained,
        implicated_eigenspace,
    })
}

/// Transfer a sharp ratio-bound certificate to another graph with the same
/// eigenspaces, where it pins down the design structure of the subset.
///
/// The subset must attain the ratio bound on `source`
/// ([`Error::BoundNotAttained`] otherwise); its residual is then confined
/// to the source's least eigenspace.  That eigenspace is located inside
/// one of `target`'s eigenspaces by projector comparison
/// ([`Error::EigenspaceMismatch`] when the graphs do not actually share
/// eigenspaces), which forces every other target verdict to be true — a
/// prediction this function re-derives from the target report rather than
/// assuming.
pub fn via_hoffman_optimality(
    source: &SpectralDecomposition,
    target: &SpectralDecomposition,
    subset: &[usize],
) -> Result<HoffmanOptimality> {
    let n = source.graph().vertex_count();
    if target.graph().vertex_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: target.graph().vertex_count(),
        });
    }
    let certificate = hoffman_certificate(source, subset)?;
    if !certificate.attained {
        return Err(Error::BoundNotAttained);
    }
    let source_index = certificate
        .implicated_eigenspace
        .expect("attained certificates carry the implicated eigenspace");

    // Find the target eigenspace containing the implicated one:
    // P_target · P_source = P_source.
    let source_projector = source.eigenspaces()[source_index].projector();
    let scale = PROJECTOR_MATCH_TOL * n as f64;
    let target_eigenspace = target
        .eigenspaces()
        .iter()
        .position(|space| {
            (space.projector() * &source_projector - &source_projector).norm() < scale
        })
        .ok_or(Error::EigenspaceMismatch)?;

    let design = Design::new(target.graph(), subset.iter().copied())?;
    let report = design_report(target, &design)?;
    let consistent = report
        .verdicts
        .iter()
        .enumerate()
        .all(|(i, &v)| v == (i != target_eigenspace));
    if !consistent {
        return Err(Error::NumericalFailure {
            context: "transferred certificate disagrees with the direct design report".to_string(),
        });
    }

    let last_group = target
        .eigenspaces()
        .last()
        .expect("decompositions are nonempty")
        .tie_group();
    let implicated_last = target.eigenspaces()[target_eigenspace].tie_group() == last_group;

    Ok(HoffmanOptimality {
        certificate,
        target_eigenspace,
        report,
        implicated_last,
    })
}

/// Subsets of `0..n` of a fixed size in colexicographic order (compare
/// sorted tuples from the largest element down).
struct ColexSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl ColexSubsets {
    /// Requires `1 ≤ size ≤ n`.
    fn new(n: usize, size: usize) -> ColexSubsets {
        ColexSubsets {
            n,
            current: Some((0..size).collect()),
        }
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.take()?;
        let s = current.len();
        let mut successor = current.clone();
        for i in 0..s {
            let ceiling = if i + 1 < s { successor[i + 1] } else { self.n };
            if successor[i] + 1 < ceiling {
                successor[i] += 1;
                for (j, slot) in successor.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                self.current = Some(successor);
                break;
            }
        }
        Some(current)
    }
}

/// Exhaustively search all nonempty proper subsets of size at most
/// `max_size` for the minimum-efficacy designs.
///
/// Enumeration order is increasing size, colexicographic within a size
/// (so witness lists are deterministic); the full vertex set is never
/// examined (its efficacy is trivially 1).  The search space
/// `Σ_s C(|V|, s)` is capped at [`MAX_SEARCH_SUBSETS`].
pub fn exhaustive_design_search(
    decomposition: &SpectralDecomposition,
    max_size: usize,
) -> Result<SearchResult> {
    exhaustive_design_search_with_tolerance(
        decomposition,
        max_size,
        crate::tolerance::RESIDUAL_ZERO_TOL,
    )
}

/// [`exhaustive_design_search`] with an explicit residual tolerance for the
/// per-subset verdicts (floating path only; exact eigenspaces ignore it).
pub fn exhaustive_design_search_with_tolerance(
    decomposition: &SpectralDecomposition,
    max_size: usize,
    residual_tol: f64,
) -> Result<SearchResult> {
    let n = decomposition.graph().vertex_count();
    if max_size < 1 || max_size > n {
        return Err(Error::OutOfRange {
            index: max_size,
            bound: n + 1,
        });
    }
    let cap = max_size.min(n - 1);
    if let Some(space) = subset_count_capped(n, cap, MAX_SEARCH_SUBSETS) {
        return Err(Error::TooLarge {
            context: "design search space",
            size: space,
            limit: MAX_SEARCH_SUBSETS,
        });
    }

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
    let regular = decomposition.regular_degree().is_some();

    let mut best: Option<Rational64> = None;
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    let mut examined = 0u64;
    let mut verdicts = vec![false; dims.len()];
    for size in 1..=cap {
        for subset in ColexSubsets::new(n, size) {
            examined += 1;
            let design = Design::from_vertex_count(n, subset.iter().copied())
                .expect("enumerated subsets are valid");
            for (i, v) in verdicts.iter_mut().enumerate() {
                *v = crate::design::integrates_eigenspace_with_tolerance(
                    decomposition,
                    &design,
                    i,
                    residual_tol,
                )
                .expect("enumerated subsets are valid");
            }
            let report = assemble_report(&verdicts, &dims, &ties, size, regular);
            let Some(efficacy) = report.efficacy else {
                continue;
            };
            match best {
                Some(current) if efficacy > current => {}
                Some(current) if efficacy == current => witnesses.push(subset),
                _ => {
                    best = Some(efficacy);
                    witnesses = vec![subset];
                }
            }
        }
    }
    Ok(SearchResult {
        best_efficacy: best,
        witnesses,
        subsets_examined: examined,
        exhaustive: cap == n - 1,
    })
}

/// `Some(count clamped to u64)` when `Σ_{s=1..=cap} C(n, s)` exceeds
/// `limit`, `None` when the whole search space fits.  Uses checked
/// arithmetic and stops at the first overflow, so huge graphs cannot wrap.
fn subset_count_capped(n: usize, cap: usize, limit: u64) -> Option<u64> {
    let mut total: u128 = 0;
    let mut binom: u128 = 1; // C(n, 0)
    for s in 1..=cap {
        // C(n, s) = C(n, s−1)·(n−s+1)/s, an exact division.
        binom = match binom.checked_mul((n - s + 1) as u128) {
            Some(v) => v / s as u128,
            None => return Some(u64::MAX),
        };
        total = total.saturating_add(binom);
        if total > limit as u128 {
            return Some(total.min(u64::MAX as u128) as u64);
        }
    }
    None
}
