//! Distance-`d` cube graphs with exact character arithmetic.
//!
//! The cube graph `Q_n(d)` has vertex set `{0,1}ⁿ` and an edge between two
//! words at Hamming distance `1..=d`; `Q_n(1) = Q_n` is the usual hypercube.
//! Vertices are encoded as the integers `0..2ⁿ` with bit `i` of the integer
//! holding coordinate `i + 1`, so the string `"100"` is `e₁`, the integer 1
//! (little-endian with respect to the string notation).
//!
//! Every `Q_n(d)` is a Cayley graph of `(Z/2)ⁿ`, so the characters
//! `χ_a(x) = (−1)^{a·x}` are a common eigenbasis for all `d`.  The weight
//! class `Λ_i = span{χ_a : wt(a) = i}` has random-walk eigenvalue
//!
//! ```text
//! μ_i = (Σ_{w=1}^{d} K_w(i)) / (Σ_{w=1}^{d} C(n,w))
//! ```
//!
//! where `K_w` is the Krawtchouk polynomial — an exact rational.  Distinct
//! weight classes can share an eigenvalue on distance cubes (`Q₃(2)` merges
//! `Λ₁` and `Λ₃` at `μ = 0`); merged classes form a single eigenspace that
//! retains the list of its weight classes for reporting.
//!
//! Because eigenvalues and character sums are exact, design verification on
//! cubes ([`cube_design_report`]) needs no eigensolve, no dense projectors,
//! and no tolerances; it scales to `n = 20` within a character-evaluation
//! budget rather than a memory limit.

use num_integer::binomial;
use num_rational::Rational64;

use crate::chars;
use crate::design::{assemble_report, Design, DesignReport};
use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::spectral::{finalize_decomposition, Eigenspace, SpectralDecomposition};

/// Largest supported cube dimension (vertex indices and character words fit
/// comfortably in machine integers; work is bounded by the evaluation
/// budget, not by memory).
pub const MAX_CUBE_DIMENSION: usize = 20;

/// Largest cube dimension for which an explicit [`Graph`] (dense edge list)
/// may be materialized.
pub const MAX_DENSE_CUBE_DIMENSION: usize = 12;

/// Budget on `|W| · 2ⁿ` character evaluations for exact design verification.
pub const CHARACTER_EVALUATION_BUDGET: u64 = 1_000_000_000;

/// The distance-`d` cube graph `Q_n(d)`, stored implicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeGraph {
    n: usize,
    d: usize,
}

/// Construct `Q_n(d)`: vertices `{0,1}ⁿ`, edges between words at Hamming
/// distance at most `d` (and at least 1).
///
/// Supports `2 ≤ n ≤ 20` and `1 ≤ d ≤ n`; `Q_n(n)` is the complete graph on
/// `2ⁿ` vertices.
pub fn cube_graph(n: usize, d: usize) -> Result<CubeGraph> {
    if !(2..=MAX_CUBE_DIMENSION).contains(&n) {
        return Err(Error::OutOfSupportedRange {
            what: "cube dimension",
            value: n,
            min: 2,
            max: MAX_CUBE_DIMENSION,
        });
    }
    if !(1..=n).contains(&d) {
        return Err(Error::OutOfSupportedRange {
            what: "cube distance threshold",
            value: d,
            min: 1,
            max: n,
        });
    }
    Ok(CubeGraph { n, d })
}

impl CubeGraph {
    /// The cube dimension `n` (number of coordinates).
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// The distance threshold `d` (words within Hamming distance `d` are
    /// adjacent).
    pub fn distance(&self) -> usize {
        self.d
    }

    /// Number of vertices, `2ⁿ`.
    pub fn vertex_count(&self) -> usize {
        1 << self.n
    }

    /// The common vertex degree `Σ_{w=1}^{d} C(n,w)`.
    pub fn degree(&self) -> usize {
        (1..=self.d)
            .map(|w| binomial(self.n as u64, w as u64) as usize)
            .sum()
    }

    /// Materialize the explicit [`Graph`] (dense edge list); supported for
    /// `n ≤ 12`.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.n > MAX_DENSE_CUBE_DIMENSION {
            return Err(Error::TooLarge {
                context: "dense cube graph",
                size: self.n as u64,
                limit: MAX_DENSE_CUBE_DIMENSION as u64,
            });
        }
        let size = self.vertex_count();
        let mut edges = Vec::with_capacity(size * self.degree() / 2);
        for x in 0..size {
            for y in (x + 1)..size {
                if (x ^ y).count_ones() as usize <= self.d {
                    edges.push((x, y));
                }
            }
        }
        build_graph(size, &edges)
    }

    /// The exact spectrum in frequency order: one entry per (merged)
    /// eigenspace, smoothest first.
    pub fn spectrum(&self) -> Vec<CubeEigenspaceInfo> {
        merged_spectrum(self.n, self.d)
    }
}

/// Summary of one exact cube eigenspace: its eigenvalues, the weight classes
/// merged into it, and its place in the frequency order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEigenspaceInfo {
    /// Eigenvalue `λ` of `L = AD⁻¹ − I`.
    pub eigenvalue: Rational64,
    /// Eigenvalue `μ = λ + 1` of the random-walk matrix `AD⁻¹`.
    pub random_walk_eigenvalue: Rational64,
    /// Weight classes `Λ_i` sharing this eigenvalue, ascending.
    pub classes: Vec<usize>,
    /// Total dimension, `Σ C(n, i)` over the merged classes.
    pub dimension: usize,
    /// Tie group in the frequency order (equal `|μ|`).
    pub tie_group: usize,
}

/// The Krawtchouk polynomial value `K_w(i) = Σ_j (−1)^j C(i,j) C(n−i, w−j)`:
/// the character sum `Σ_{wt(x)=w} χ_x(y)` over any word `y` of weight `i`.
pub fn krawtchouk(n: usize, w: usize, i: usize) -> i64 {
    (0..=w)
        .map(|j| {
            let sign = if j % 2 == 0 { 1i64 } else { -1i64 };
            sign * binomial(i as i64, j as i64) * binomial((n - i) as i64, (w - j) as i64)
        })
        .sum()
}

/// Random-walk eigenvalue of the weight class `Λ_i` on `Q_n(d)`.
fn class_eigenvalue(n: usize, d: usize, i: usize) -> Rational64 {
    let numerator: i64 = (1..=d).map(|w| krawtchouk(n, w, i)).sum();
    let degree: i64 = (1..=d).map(|w| binomial(n as i64, w as i64)).sum();
    Rational64::new(numerator, degree)
}

/// Merge weight classes by eigenvalue and sort into frequency order.
fn merged_spectrum(n: usize, d: usize) -> Vec<CubeEigenspaceInfo> {
    let mut entries: Vec<(Rational64, Vec<usize>)> = Vec::new();
    for i in 0..=n {
        let mu = class_eigenvalue(n, d, i);
        match entries.iter_mut().find(|(m, _)| *m == mu) {
            Some((_, classes)) => classes.push(i),
            None => entries.push((mu, vec![i])),
        }
    }
    // Frequency order: descending |μ|, then descending μ inside a tie.
    entries.sort_by(|(a, _), (b, _)| {
        let (abs_a, abs_b) = (rational_abs(*a), rational_abs(*b));
        abs_b.cmp(&abs_a).then_with(|| b.cmp(a))
    });
    let one = Rational64::new(1, 1);
    let mut infos: Vec<CubeEigenspaceInfo> = Vec::with_capacity(entries.len());
    let mut tie = 0usize;
    for (pos, (mu, classes)) in entries.into_iter().enumerate() {
        if pos > 0 && rational_abs(mu) != rational_abs(infos[pos - 1].random_walk_eigenvalue) {
            tie += 1;
        }
        let dimension = classes
            .iter()
            .map(|&i| binomial(n as u64, i as u64) as usize)
            .sum();
        infos.push(CubeEigenspaceInfo {
            eigenvalue: mu - one,
            random_walk_eigenvalue: mu,
            classes,
            dimension,
            tie_group: tie,
        });
    }
    infos
}

fn rational_abs(r: Rational64) -> Rational64 {
    if r < Rational64::new(0, 1) {
        -r
    } else {
        r
    }
}

/// The exact eigenspace of `Q_n(d)` containing the weight class `Λ_class`
/// (merged with any other classes sharing its eigenvalue).
pub fn cube_eigenspace(n: usize, d: usize, class: usize) -> Result<Eigenspace> {
    let cube = cube_graph(n, d)?;
    if class > n {
        return Err(Error::OutOfRange {
            index: class,
            bound: n + 1,
        });
    }
    let info = cube
        .spectrum()
        .into_iter()
        .find(|info| info.classes.contains(&class))
        .expect("every weight class appears in the spectrum");
    let mut space = Eigenspace::characters(info.eigenvalue, n, info.classes);
    space.set_tie_group(info.tie_group);
    Ok(space)
}

/// The full exact spectral decomposition of `Q_n(d)`.
///
/// Materializes the explicit graph, so this is limited to `n ≤ 12`; exact
/// design verification at larger `n` goes through [`cube_design_report`],
/// which never builds the decomposition.
pub fn cube_decomposition(n: usize, d: usize) -> Result<SpectralDecomposition> {
    let cube = cube_graph(n, d)?;
    let graph = cube.to_graph()?;
    let spaces = cube
        .spectrum()
        .into_iter()
        .map(|info| Eigenspace::characters(info.eigenvalue, n, info.classes))
        .collect();
    finalize_decomposition(graph, spaces)
}

/// A design report on a cube, with the exact eigenspace summaries aligned to
/// the verdict order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeDesignReport {
    /// The ambient cube graph.
    pub graph: CubeGraph,
    /// Eigenspace summaries in frequency order (the order of
    /// `report.verdicts`).
    pub eigenspaces: Vec<CubeEigenspaceInfo>,
    /// Verdicts, design rank, efficacy, extremality — identical contract to
    /// the generic design report, computed exactly.
    pub report: DesignReport,
}

/// Verify a design on `Q_n(d)` exactly: `Λ_i` is integrated iff every
/// character sum `Σ_{x∈W} χ_a(x)` with `wt(a) = i` vanishes.
///
/// Words are vertex encodings (`0..2ⁿ`).  The total work is `|W| · 2ⁿ`
/// character evaluations, capped by [`CHARACTER_EVALUATION_BUDGET`].
pub fn cube_design_report(n: usize, d: usize, words: &[usize]) -> Result<CubeDesignReport> {
    let cube = cube_graph(n, d)?;
    let design = Design::from_vertex_count(cube.vertex_count(), words.iter().copied())?;
    let work = design.len() as u64 * (1u64 << n);
    if work > CHARACTER_EVALUATION_BUDGET {
        return Err(Error::TooLarge {
            context: "cube design verification",
            size: work,
            limit: CHARACTER_EVALUATION_BUDGET,
        });
    }
    let eigenspaces = cube.spectrum();
    let verdicts: Vec<bool> = eigenspaces
        .iter()
        .map(|info| {
            info.classes
                .iter()
                .all(|&class| chars::weight_class_integrated(n, class, design.vertices()))
        })
        .collect();
    let dimensions: Vec<usize> = eigenspaces.iter().map(|e| e.dimension).collect();
    let ties: Vec<usize> = eigenspaces.iter().map(|e| e.tie_group).collect();
    let report = assemble_report(&verdicts, &dimensions, &ties, design.len(), true);
    Ok(CubeDesignReport {
        graph: cube,
        eigenspaces,
        report,
    })
}

/// The two- or four-vertex design with guaranteed rank on `Q_n`: antipodal
/// pair `{0…0, 1…1}` for odd `n` (a 3-design), and
/// `{e₁, e₁+e₂, 1−e₁, 1−e₁−e₂}` for even `n` (at least a 4-design).
pub fn simple_design(n: usize) -> Result<Vec<usize>> {
    if !(3..=MAX_CUBE_DIMENSION).contains(&n) {
        return Err(Error::OutOfSupportedRange {
            what: "simple design dimension",
            value: n,
            min: 3,
            max: MAX_CUBE_DIMENSION,
        });
    }
    let ones = (1usize << n) - 1;
    if n % 2 == 1 {
        Ok(vec![0, ones])
    } else {
        let e1 = 1usize;
        let e2 = 2usize;
        let mut words = vec![e1, e1 | e2, ones ^ e1, ones ^ e1 ^ e2];
        words.sort_unstable();
        Ok(words)
    }
}
