//! Association schemes: Hamming and Johnson families, Bose–Mesner
//! idempotents, union distance graphs, and Delsarte / classical t-designs.
//!
//! An association scheme partitions the ordered pairs of a point set `X`
//! into relations `R₀ (equality), R₁, …, R_n` whose 0/1 adjacency matrices
//! `D_i` commute and multiply with constant intersection numbers.  The
//! algebra they span has a second basis of orthogonal projectors — the
//! primitive idempotents `J₀, …, J_n` — whose column spans are the common
//! eigenspaces of every relation matrix.  Consequently all *union graphs*
//! `G_I` (adjacency `Σ_{i∈I} D_i`) share eigenspaces and differ only in
//! eigenvalues, which is what lets a design certificate transfer between
//! graphs of one scheme.
//!
//! Two families are provided:
//!
//! * **Hamming scheme** on `{0,1}ⁿ`, relation = Hamming distance.  Its
//!   eigenspaces are the cube weight classes `Λ_j`, so idempotents and
//!   design verdicts are exact: `J_j[x,y] = K_j(d(x,y))/2ⁿ` with `K_j` the
//!   Krawtchouk polynomial, and `J_j 1_Y = 0` is an integer character-sum
//!   test.
//! * **Johnson scheme** `J(n,k)` on the k-subsets of `[n]`, relation
//!   `i ⟺ |A ∩ B| = k − i`.  Idempotents come from a floating
//!   eigendecomposition of `D₁` (its eigenvalues `(k−j)(n−k−j) − j` are
//!   distinct and strictly decreasing in `j`), indexed so that
//!   `rank(J_j) = C(n,j) − C(n,j−1)`, which is validated.
//!
//! Relation eigenvalues `p_i(j)` (the eigenvalue of `D_i` on `col(J_j)`)
//! are integers for both families; floating values are snapped to integers
//! and the snap is validated, so union-graph spectra are exact rationals
//! even on the floating path.

use nalgebra::{DMatrix, DVector};
use num_integer::binomial;
use num_rational::Rational64;

use itertools::Itertools;

use crate::chars;
use crate::cube::krawtchouk;
use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::scalar::Scalar;
use crate::spectral::{
    finalize_decomposition, group_descending, orthonormalize, Eigenspace, SpectralDecomposition,
};
use crate::tolerance::{IDEMPOTENT_ANNIHILATION_TOL, SCHEME_EIGENVALUE_GROUP_TOL};

/// Largest supported Hamming-scheme dimension (`|X| = 2ⁿ ≤ 1024`).
pub const MAX_HAMMING_SCHEME_DIMENSION: usize = 10;

/// Largest supported Johnson-scheme point count (`C(n,k) ≤ 5000` keeps
/// dense `|X| × |X|` work tractable).
pub const MAX_SCHEME_POINTS: usize = 5000;

/// Which family an [`AssociationScheme`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    /// Hamming scheme on `{0,1}ⁿ`: relation = Hamming distance.
    Hamming {
        /// Word length `n`.
        n: usize,
    },
    /// Johnson scheme on k-subsets of `[n]`: relation `i ⟺ |A∩B| = k−i`.
    Johnson {
        /// Ground-set size `n`.
        n: usize,
        /// Subset size `k`.
        k: usize,
    },
}

/// A symmetric association scheme with its Bose–Mesner data.
///
/// Relation matrices and idempotents are materialized on demand; the
/// scheme itself stores the relation index per point pair, the exact
/// eigenvalue table `p_i(j)`, the intersection numbers, and (for the
/// Johnson family) orthonormal bases of the common eigenspaces.
#[derive(Clone, Debug)]
pub struct AssociationScheme {
    kind: SchemeKind,
    points: Vec<u64>,
    classes: usize,
    relation: Vec<Vec<u8>>,
    /// `p[i][j]`: eigenvalue of `D_i` on `col(J_j)` (exact integers).
    p: Vec<Vec<i64>>,
    /// Orthonormal basis of `col(J_j)` per class; `None` for the Hamming
    /// scheme, whose eigenspaces are character classes.
    class_bases: Option<Vec<Vec<DVector<f64>>>>,
    /// `c[i][j][k]`: the intersection number `|{z : (x,z) ∈ R_i, (z,y) ∈
    /// R_j}|` for `(x,y) ∈ R_k`.
    intersection: Vec<Vec<Vec<u64>>>,
}

impl AssociationScheme {
    /// The scheme family and parameters.
    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    /// Number of points `|X|`.
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Number of nonzero relation classes `n` (relations are `R₀..R_n`).
    pub fn classes(&self) -> usize {
        self.classes
    }

    /// The point encodings: cube words for the Hamming scheme, element
    /// bitmasks for the Johnson scheme (bit `e−1` = element `e`).
    pub fn points(&self) -> &[u64] {
        &self.points
    }

    /// Display label of a point: `"011"`-style word (coordinate 1 first)
    /// or `"{1,3}"`-style subset (1-indexed).
    pub fn point_label(&self, index: usize) -> String {
        let point = self.points[index];
        match self.kind {
            SchemeKind::Hamming { n } => (0..n)
                .map(|j| if point >> j & 1 == 1 { '1' } else { '0' })
                .collect(),
            SchemeKind::Johnson { n, .. } => {
                let elements: Vec<String> = (0..n)
                    .filter(|e| point >> e & 1 == 1)
                    .map(|e| (e + 1).to_string())
                    .collect();
                format!("{{{}}}", elements.join(","))
            }
        }
    }

    /// The relation index of a point pair (`0 ⟺ x = y`).
    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relation[x][y] as usize
    }

    /// The 0/1 relation adjacency matrix `D_i`, materialized densely.
    pub fn relation_matrix(&self, i: usize) -> DMatrix<f64> {
        let size = self.point_count();
        DMatrix::from_fn(size, size, |x, y| {
            if self.relation[x][y] as usize == i {
                1.0
            } else {
                0.0
            }
        })
    }

    /// The primitive idempotent `J_j`, materialized densely.  Exact dyadic
    /// entries for the Hamming scheme; assembled from the stored eigenbasis
    /// for the Johnson scheme.
    pub fn idempotent(&self, j: usize) -> DMatrix<f64> {
        match (&self.kind, &self.class_bases) {
            (SchemeKind::Hamming { n }, _) => {
                let size = self.point_count();
                let scale = 1.0 / size as f64;
                DMatrix::from_fn(size, size, |x, y| {
                    let d = (self.points[x] ^ self.points[y]).count_ones() as usize;
                    krawtchouk(*n, j, d) as f64 * scale
                })
            }
            (SchemeKind::Johnson { .. }, Some(bases)) => {
                let size = self.point_count();
                let mut m = DMatrix::zeros(size, size);
                for q in &bases[j] {
                    m += q * q.transpose();
                }
                m
            }
            (SchemeKind::Johnson { .. }, None) => unreachable!("Johnson schemes store bases"),
        }
    }

    /// Rank of `J_j` (dimension of the j-th common eigenspace).
    pub fn idempotent_rank(&self, j: usize) -> usize {
        match (&self.kind, &self.class_bases) {
            (SchemeKind::Hamming { n }, _) => binomial(*n as u64, j as u64) as usize,
            (_, Some(bases)) => bases[j].len(),
            _ => unreachable!(),
        }
    }

    /// The eigenvalue `p_i(j)` of `D_i` on `col(J_j)` (an exact integer for
    /// both families).
    pub fn relation_eigenvalue(&self, i: usize, j: usize) -> i64 {
        self.p[i][j]
    }

    /// The valency of relation `i` (common row sum of `D_i`).
    pub fn valency(&self, i: usize) -> usize {
        self.p[i][0] as usize
    }

    /// The intersection number `c_{ijk} = |{z : (x,z) ∈ R_i, (z,y) ∈ R_j}|`
    /// for any pair `(x,y) ∈ R_k`.
    pub fn intersection_number(&self, i: usize, j: usize, k: usize) -> u64 {
        self.intersection[i][j][k]
    }
}

fn intersection_table(points: &[u64], relation: &[Vec<u8>], classes: usize) -> Vec<Vec<Vec<u64>>> {
    let size = points.len();
    let mut table = vec![vec![vec![0u64; classes + 1]; classes + 1]; classes + 1];
    let representatives: Vec<usize> = (0..=classes)
        .map(|k| {
            (0..size)
                .find(|&y| relation[0][y] as usize == k)
                .expect("every relation class is realized")
        })
        .collect();
    for (k, &y) in representatives.iter().enumerate() {
        for (row, &base) in relation.iter().zip(&relation[0]) {
            let i = base as usize;
            let j = row[y] as usize;
            table[i][j][k] += 1;
        }
    }
    table
}

/// The Hamming association scheme on `{0,1}ⁿ` (`2 ≤ n ≤ 10`), with exact
/// character eigenspaces.
pub fn hamming_scheme(n: usize) -> Result<AssociationScheme> {
    if n < 2 {
        return Err(Error::OutOfSupportedRange {
            what: "Hamming scheme dimension",
            value: n,
            min: 2,
            max: MAX_HAMMING_SCHEME_DIMENSION,
        });
    }
    if n > MAX_HAMMING_SCHEME_DIMENSION {
        return Err(Error::TooLarge {
            context: "Hamming scheme dimension",
            size: n as u64,
            limit: MAX_HAMMING_SCHEME_DIMENSION as u64,
        });
    }
    let size = 1usize << n;
    let points: Vec<u64> = (0..size as u64).collect();
    let relation: Vec<Vec<u8>> = (0..size)
        .map(|x| (0..size).map(|y| (x ^ y).count_ones() as u8).collect())
        .collect();
    let p: Vec<Vec<i64>> = (0..=n)
        .map(|i| (0..=n).map(|j| krawtchouk(n, i, j)).collect())
        .collect();
    let intersection = intersection_table(&points, &relation, n);
    Ok(AssociationScheme {
        kind: SchemeKind::Hamming { n },
        points,
        classes: n,
        relation,
        p,
        class_bases: None,
        intersection,
    })
}

/// The k-subsets of `[n]` in lexicographic order, encoded as bitmasks
/// (bit `e−1` = element `e`).
pub fn johnson_points(n: usize, k: usize) -> Result<Vec<u64>> {
    check_johnson_parameters(n, k)?;
    Ok((0..n)
        .combinations(k)
        .map(|subset| subset.iter().fold(0u64, |mask, &e| mask | 1 << e))
        .collect())
}

fn check_johnson_parameters(n: usize, k: usize) -> Result<()> {
    if k < 1 || 2 * k > n || n > 63 {
        return Err(Error::OutOfSupportedRange {
            what: "Johnson scheme subset size",
            value: k,
            min: 1,
            max: n / 2,
        });
    }
    let size = binomial(n as u64, k as u64);
    if size > MAX_SCHEME_POINTS as u64 {
        return Err(Error::TooLarge {
            context: "Johnson scheme points",
            size,
            limit: MAX_SCHEME_POINTS as u64,
        });
    }
    Ok(())
}

/// The Johnson association scheme `J(n,k)` (`1 ≤ k ≤ n/2`,
/// `C(n,k) ≤ 5000`), with eigenspaces from a validated floating
/// eigendecomposition of `D₁`.
pub fn johnson_scheme(n: usize, k: usize) -> Result<AssociationScheme> {
    let points = johnson_points(n, k)?;
    let size = points.len();
    let relation: Vec<Vec<u8>> = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| (k - (points[x] & points[y]).count_ones() as usize) as u8)
                .collect()
        })
        .collect();

    // Eigenspaces of D₁: eigenvalue (k−j)(n−k−j) − j at class j, strictly
    // decreasing, so descending eigenvalue groups are classes 0, 1, …, k.
    let d1: DMatrix<f64> =
        DMatrix::from_fn(
            size,
            size,
            |x, y| {
                if relation[x][y] == 1 {
                    1.0
                } else {
                    0.0
                }
            },
        );
    let eigen = d1.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
    let sorted: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let groups = group_descending(&sorted, SCHEME_EIGENVALUE_GROUP_TOL)?;
    if groups.len() != k + 1 {
        return Err(Error::NumericalFailure {
            context: format!(
                "expected {} distinct relation-1 eigenvalues, found {}",
                k + 1,
                groups.len()
            ),
        });
    }

    let mut class_bases = Vec::with_capacity(k + 1);
    for (j, group) in groups.iter().enumerate() {
        let theta = ((k - j) as i64) * ((n - k - j) as i64) - j as i64;
        let observed = sorted[group.clone()].iter().sum::<f64>() / group.len() as f64;
        if (observed - theta as f64).abs() > SCHEME_EIGENVALUE_GROUP_TOL {
            return Err(Error::NumericalFailure {
                context: format!("relation-1 eigenvalue {observed:.6} is not the expected {theta}"),
            });
        }
        let expected_rank =
            (binomial(n as u64, j as u64) - binomial(n as u64, j.wrapping_sub(1) as u64)) as usize;
        let raw: Vec<DVector<f64>> = order[group.clone()]
            .iter()
            .map(|&col| DVector::from_fn(size, |r, _| eigen.eigenvectors[(r, col)]))
            .collect();
        let basis = orthonormalize(raw);
        if basis.len() != expected_rank {
            return Err(Error::NumericalFailure {
                context: format!(
                    "eigenspace {j} has rank {} but the scheme requires {expected_rank}",
                    basis.len()
                ),
            });
        }
        class_bases.push(basis);
    }

    // Relation eigenvalues p_i(j), snapped to the integers they must be.
    let mut p = vec![vec![0i64; k + 1]; k + 1];
    for (i, row) in p.iter_mut().enumerate() {
        let di = DMatrix::from_fn(size, size, |x, y| {
            if relation[x][y] as usize == i {
                1.0
            } else {
                0.0
            }
        });
        for (j, value) in row.iter_mut().enumerate() {
            let basis = &class_bases[j];
            let mean = basis.iter().map(|q| (&di * q).dot(q)).sum::<f64>() / basis.len() as f64;
            let snapped = mean.round();
            if (mean - snapped).abs() > SCHEME_EIGENVALUE_GROUP_TOL {
                return Err(Error::NumericalFailure {
                    context: format!("relation eigenvalue p_{i}({j}) = {mean:.8} is not integral"),
                });
            }
            *value = snapped as i64;
        }
    }

    let intersection = intersection_table(&points, &relation, k);
    Ok(AssociationScheme {
        kind: SchemeKind::Johnson { n, k },
        points,
        classes: k,
        relation,
        p,
        class_bases: Some(class_bases),
        intersection,
    })
}

fn check_index_set(scheme: &AssociationScheme, relations: &[usize]) -> Result<Vec<usize>> {
    if relations.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let mut set: Vec<usize> = relations.to_vec();
    set.sort_unstable();
    set.dedup();
    for &i in &set {
        if i == 0 || i > scheme.classes() {
            return Err(Error::OutOfRange {
                index: i,
                bound: scheme.classes() + 1,
            });
        }
    }
    Ok(set)
}

/// The union distance graph `G_I` with adjacency `Σ_{i∈I} D_i`.
///
/// `I` must be a nonempty set of nonzero relation indices, and the union
/// must be connected (disconnected unions — e.g. a bipartite half — are
/// rejected like any other disconnected graph).  Vertices inherit the
/// scheme's point labels.
pub fn union_graph(scheme: &AssociationScheme, relations: &[usize]) -> Result<Graph> {
    let set = check_index_set(scheme, relations)?;
    let size = scheme.point_count();
    let mut edges = Vec::new();
    for x in 0..size {
        for y in (x + 1)..size {
            if set.binary_search(&(scheme.relation[x][y] as usize)).is_ok() {
                edges.push((x, y));
            }
        }
    }
    let labels = (0..size).map(|i| scheme.point_label(i)).collect();
    build_graph(size, &edges)?.with_labels(labels)
}

/// The spectral decomposition of the union graph `G_I`, assembled from the
/// scheme's common eigenspaces rather than an eigensolve.
///
/// Eigenvalues are exact rationals `Σ_{i∈I} p_i(j) / deg − 1`; classes that
/// share an eigenvalue on this particular union are merged into one
/// eigenspace, annotated with their class indices.
pub fn scheme_decomposition(
    scheme: &AssociationScheme,
    relations: &[usize],
) -> Result<SpectralDecomposition> {
    let set = check_index_set(scheme, relations)?;
    let graph = union_graph(scheme, &set)?;
    let degree: i64 = set.iter().map(|&i| scheme.p[i][0]).sum();

    // Group classes by their exact random-walk eigenvalue on this union.
    let mut merged: Vec<(Rational64, Vec<usize>)> = Vec::new();
    for j in 0..=scheme.classes() {
        let numerator: i64 = set.iter().map(|&i| scheme.p[i][j]).sum();
        let mu = Rational64::new(numerator, degree);
        match merged.iter_mut().find(|(m, _)| *m == mu) {
            Some((_, classes)) => classes.push(j),
            None => merged.push((mu, vec![j])),
        }
    }

    let one = Rational64::new(1, 1);
    let spaces: Vec<Eigenspace> = match scheme.kind {
        SchemeKind::Hamming { n } => merged
            .into_iter()
            .map(|(mu, classes)| Eigenspace::characters(mu - one, n, classes))
            .collect(),
        SchemeKind::Johnson { .. } => {
            let bases = scheme
                .class_bases
                .as_ref()
                .expect("Johnson schemes store bases");
            merged
                .into_iter()
                .map(|(mu, classes)| {
                    let basis: Vec<DVector<f64>> = classes
                        .iter()
                        .flat_map(|&j| bases[j].iter().cloned())
                        .collect();
                    let size = scheme.point_count();
                    let mut projector = DMatrix::zeros(size, size);
                    for q in &basis {
                        projector += q * q.transpose();
                    }
                    Eigenspace::dense(Scalar::Exact(mu - one), classes, basis, projector)
                })
                .collect()
        }
    };
    finalize_decomposition(graph, spaces)
}

/// The Delsarte design strength of a point subset: the largest `t` with
/// `J_i 1_Y = 0` for all `1 ≤ i ≤ t` (0 when `J₁ 1_Y ≠ 0`).
///
/// `subset` lists point indices.  Hamming-scheme verdicts are exact
/// character sums; Johnson-scheme verdicts compare `‖J_i 1_Y‖` against the
/// pinned annihilation tolerance.
pub fn t_design_strength(scheme: &AssociationScheme, subset: &[usize]) -> Result<usize> {
    if subset.is_empty() {
        return Err(Error::EmptyDesign);
    }
    let mut indices = subset.to_vec();
    indices.sort_unstable();
    indices.dedup();
    if indices.len() != subset.len() {
        let dup = subset
            .iter()
            .find(|v| subset.iter().filter(|w| w == v).count() > 1)
            .copied()
            .unwrap_or(0);
        return Err(Error::DuplicateVertex { vertex: dup });
    }
    if let Some(&max) = indices.last() {
        if max >= scheme.point_count() {
            return Err(Error::OutOfRange {
                index: max,
                bound: scheme.point_count(),
            });
        }
    }

    let annihilated: Box<dyn Fn(usize) -> bool> = match (&scheme.kind, &scheme.class_bases) {
        (SchemeKind::Hamming { n }, _) => {
            let words: Vec<usize> = indices.iter().map(|&i| scheme.points[i] as usize).collect();
            let n = *n;
            Box::new(move |i: usize| chars::weight_class_sums_vanish(n, i, &words))
        }
        (SchemeKind::Johnson { .. }, Some(bases)) => {
            let size = scheme.point_count();
            let mut indicator = DVector::zeros(size);
            for &i in &indices {
                indicator[i] = 1.0;
            }
            let bases = bases.clone();
            Box::new(move |i: usize| {
                let norm_sq: f64 = bases[i].iter().map(|q| q.dot(&indicator).powi(2)).sum();
                norm_sq.sqrt() < IDEMPOTENT_ANNIHILATION_TOL * (size as f64).sqrt()
            })
        }
        _ => unreachable!(),
    };

    let mut strength = 0;
    for i in 1..=scheme.classes() {
        if !annihilated(i) {
            break;
        }
        strength = i;
    }
    Ok(strength)
}

/// A family of k-element blocks over the ground set `[n]` (1-indexed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    ground_size: usize,
    block_size: usize,
    blocks: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

impl BlockFamily {
    /// Build a block family; every block must have exactly `block_size`
    /// distinct elements of `1..=ground_size`, and duplicate blocks are
    /// rejected.
    pub fn new(
        ground_size: usize,
        block_size: usize,
        blocks: Vec<Vec<usize>>,
    ) -> Result<BlockFamily> {
        if ground_size == 0 || ground_size > 63 {
            return Err(Error::OutOfSupportedRange {
                what: "block family ground size",
                value: ground_size,
                min: 1,
                max: 63,
            });
        }
        if block_size == 0 || block_size > ground_size {
            return Err(Error::OutOfSupportedRange {
                what: "block size",
                value: block_size,
                min: 1,
                max: ground_size,
            });
        }
        if blocks.is_empty() {
            return Err(Error::TooShort { length: 0, min: 1 });
        }
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        let mut masks = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut block = block;
            block.sort_unstable();
            block.dedup();
            if block.len() != block_size {
                return Err(Error::Parse {
                    message: format!(
                        "block {{{}}} does not have {block_size} distinct elements",
                        block.iter().map(usize::to_string).join(",")
                    ),
                });
            }
            if block[0] < 1 || block[block.len() - 1] > ground_size {
                return Err(Error::OutOfRange {
                    index: *block.last().expect("nonempty block"),
                    bound: ground_size + 1,
                });
            }
            let mask = block.iter().fold(0u64, |m, &e| m | 1 << (e - 1));
            if masks.contains(&mask) {
                return Err(Error::Parse {
                    message: format!(
                        "duplicate block {{{}}}",
                        block.iter().map(usize::to_string).join(",")
                    ),
                });
            }
            masks.push(mask);
            sorted_blocks.push(block);
        }
        Ok(BlockFamily {
            ground_size,
            block_size,
            blocks: sorted_blocks,
            masks,
        })
    }

    /// Parse one block per line, elements space-separated and 1-indexed.
    pub fn parse(ground_size: usize, block_size: usize, text: &str) -> Result<BlockFamily> {
        let mut blocks = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let block: Vec<usize> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        message: format!("invalid block element {tok:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            blocks.push(block);
        }
        BlockFamily::new(ground_size, block_size, blocks)
    }

    /// Build a block family from element bitmasks (bit `e−1` = element `e`),
    /// e.g. a subset of [`johnson_points`].
    pub fn from_point_masks(
        ground_size: usize,
        block_size: usize,
        masks: &[u64],
    ) -> Result<BlockFamily> {
        let blocks = masks
            .iter()
            .map(|&mask| {
                (0..ground_size)
                    .filter(|e| mask >> e & 1 == 1)
                    .map(|e| e + 1)
                    .collect()
            })
            .collect();
        BlockFamily::new(ground_size, block_size, blocks)
    }

    /// Ground-set size `n`.
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Block size `k`.
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// The blocks, each sorted ascending (1-indexed elements).
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// Classical design check: `Some(λ)` iff every t-subset of the ground set
/// lies in exactly `λ` blocks, `None` otherwise.
///
/// `t = 0` counts the empty set, so it always yields the block count.
pub fn classical_t_design(family: &BlockFamily, t: usize) -> Result<Option<u64>> {
    if t > family.block_size() {
        return Err(Error::OutOfRange {
            index: t,
            bound: family.block_size() + 1,
        });
    }
    let mut lambda: Option<u64> = None;
    for subset in (0..family.ground_size()).combinations(t) {
        let mask = subset.iter().fold(0u64, |m, &e| m | 1 << e);
        let count = family
            .masks
            .iter()
            .filter(|&&block| block & mask == mask)
            .count() as u64;
        match lambda {
            None => lambda = Some(count),
            Some(seen) if seen != count => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixture, Fixture};

    fn fano_plane() -> BlockFamily {
        // Lines {i, i+1, i+3} mod 7, 1-indexed.
        let blocks = (0..7)
            .map(|i| vec![i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1])
            .collect();
        BlockFamily::new(7, 3, blocks).unwrap()
    }

    #[test]
    fn hamming_scheme_basics() {
        let s = hamming_scheme(3).unwrap();
        assert_eq!(s.point_count(), 8);
        assert_eq!(s.classes(), 3);
        // Relation multiplicities per vertex: 1, 3, 3, 1.
        for i in 0..=3 {
            assert_eq!(s.valency(i), [1, 3, 3, 1][i]);
        }
        // J0 = (1/8)·all-ones.
        let j0 = s.idempotent(0);
        assert!(j0.iter().all(|&v| (v - 0.125).abs() < 1e-12));
        assert_eq!(s.point_label(5), "101");
        assert!(matches!(hamming_scheme(11), Err(Error::TooLarge { .. })));
        assert!(matches!(
            hamming_scheme(1),
            Err(Error::OutOfSupportedRange { .. })
        ));
    }

    #[test]
    fn idempotent_algebra_is_exact_for_hamming() {
        let s = hamming_scheme(3).unwrap();
        let size = s.point_count();
        let mut sum = DMatrix::<f64>::zeros(size, size);
        for j in 0..=3 {
            let jj = s.idempotent(j);
            assert!((&jj * &jj - &jj).norm() < 1e-12, "J{j} idempotent");
            sum += &jj;
            for l in (j + 1)..=3 {
                assert!((&jj * s.idempotent(l)).norm() < 1e-12, "J{j} J{l} = 0");
            }
            assert_eq!(s.idempotent_rank(j), [1, 3, 3, 1][j]);
        }
        assert!((sum - DMatrix::<f64>::identity(size, size)).norm() < 1e-12);
    }

    #[test]
    fn relation_matrices_diagonalize_on_idempotents() {
        let s = hamming_scheme(3).unwrap();
        for i in 0..=3 {
            let di = s.relation_matrix(i);
            for j in 0..=3 {
                let jj = s.idempotent(j);
                let residual = &di * &jj - &jj * s.relation_eigenvalue(i, j) as f64;
                assert!(residual.norm() < 1e-10, "D{i} J{j}");
            }
        }
    }

    #[test]
    fn johnson_scheme_basics() {
        let s = johnson_scheme(5, 2).unwrap();
        assert_eq!(s.point_count(), 10);
        assert_eq!(s.classes(), 2);
        assert_eq!(
            (0..=2).map(|j| s.idempotent_rank(j)).collect::<Vec<_>>(),
            vec![1, 4, 5]
        );
        assert_eq!(s.point_label(0), "{1,2}");
        // Valencies: partner shares one element (6 ways), disjoint (3 ways).
        assert_eq!((s.valency(0), s.valency(1), s.valency(2)), (1, 6, 3));
        // p₁(j) = (k−j)(n−k−j) − j = 6, 1, −2.
        assert_eq!(
            (0..=2)
                .map(|j| s.relation_eigenvalue(1, j))
                .collect::<Vec<_>>(),
            vec![6, 1, -2]
        );
        assert!(matches!(
            johnson_scheme(5, 3),
            Err(Error::OutOfSupportedRange { .. })
        ));
        assert!(matches!(
            johnson_scheme(40, 10),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn johnson_idempotents_project() {
        let s = johnson_scheme(5, 2).unwrap();
        let size = s.point_count();
        let mut sum = DMatrix::<f64>::zeros(size, size);
        for j in 0..=2 {
            let jj = s.idempotent(j);
            assert!((&jj * &jj - &jj).norm() < 1e-9);
            sum += &jj;
        }
        assert!((sum - DMatrix::<f64>::identity(size, size)).norm() < 1e-9);
    }

    #[test]
    fn intersection_numbers_match_direct_counts() {
        let s = johnson_scheme(5, 2).unwrap();
        // Triangle count around a disjoint pair: z sharing one element with
        // both x and y.  Validate a handful of entries against hand counts.
        assert_eq!(s.intersection_number(0, 2, 2), 1);
        assert_eq!(s.intersection_number(1, 1, 2), 4);
        // Row sums over i of c_ijk at fixed j, k... simpler: Σ_i c_ijk = v_j.
        for j in 0..=2 {
            for k in 0..=2 {
                let total: u64 = (0..=2).map(|i| s.intersection_number(i, j, k)).sum();
                assert_eq!(total, s.valency(j) as u64, "Σ_i c_i{j}{k}");
            }
        }
    }

    #[test]
    fn union_graphs_of_johnson_5_2() {
        let s = johnson_scheme(5, 2).unwrap();
        // G₂ (disjoint pairs) is the Petersen graph, vertex for vertex.
        let g2 = union_graph(&s, &[2]).unwrap();
        let petersen = fixture(Fixture::Petersen).unwrap();
        assert_eq!(g2.edges(), petersen.edges());
        assert_eq!(g2.labels(), petersen.labels());
        // G₁ is its complement within the scheme.
        let g1 = union_graph(&s, &[1]).unwrap();
        assert_eq!(g1.edge_count(), 30);
        assert_eq!(g1.regular_degree(), Some(6));
        // Index validation.
        assert!(matches!(union_graph(&s, &[]), Err(Error::EmptyIndexSet)));
        assert!(matches!(
            union_graph(&s, &[0, 1]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            union_graph(&s, &[3]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn union_of_hamming_relations_is_a_distance_cube() {
        let s = hamming_scheme(3).unwrap();
        let g = union_graph(&s, &[1, 2]).unwrap();
        let q32 = crate::cube::cube_graph(3, 2).unwrap().to_graph().unwrap();
        assert_eq!(g.edges(), q32.edges());
    }

    #[test]
    fn scheme_decompositions_match_reference_spectra() {
        let s = johnson_scheme(5, 2).unwrap();
        // G₁: frequency order 0 > −4/3 (dim 5) > −5/6 (dim 4).
        let d1 = scheme_decomposition(&s, &[1]).unwrap();
        let summary: Vec<(Rational64, usize, Vec<usize>)> = d1
            .eigenspaces()
            .iter()
            .map(|e| {
                (
                    e.eigenvalue().as_exact().unwrap(),
                    e.dimension(),
                    e.classes().to_vec(),
                )
            })
            .collect();
        assert_eq!(
            summary,
            vec![
                (Rational64::new(0, 1), 1, vec![0]),
                (Rational64::new(-4, 3), 5, vec![2]),
                (Rational64::new(-5, 6), 4, vec![1]),
            ]
        );
        // G₂ (Petersen): 0 > −5/3 (dim 4) > −2/3 (dim 5).
        let d2 = scheme_decomposition(&s, &[2]).unwrap();
        let summary: Vec<(Rational64, usize)> = d2
            .eigenspaces()
            .iter()
            .map(|e| (e.eigenvalue().as_exact().unwrap(), e.dimension()))
            .collect();
        assert_eq!(
            summary,
            vec![
                (Rational64::new(0, 1), 1),
                (Rational64::new(-5, 3), 4),
                (Rational64::new(-2, 3), 5),
            ]
        );
        // The union over all classes is complete: one merged eigenspace.
        let dall = scheme_decomposition(&s, &[1, 2]).unwrap();
        assert_eq!(dall.eigenspaces().len(), 2);
        assert_eq!(dall.eigenspaces()[1].dimension(), 9);
        assert_eq!(dall.eigenspaces()[1].classes(), &[1, 2]);
    }

    #[test]
    fn exact_hamming_decomposition_for_distance_cube() {
        let s = hamming_scheme(3).unwrap();
        let d = scheme_decomposition(&s, &[1, 2]).unwrap();
        assert!(d.is_exact());
        let summary: Vec<(Rational64, usize, Vec<usize>)> = d
            .eigenspaces()
            .iter()
            .map(|e| {
                (
                    e.eigenvalue().as_exact().unwrap(),
                    e.dimension(),
                    e.classes().to_vec(),
                )
            })
            .collect();
        assert_eq!(
            summary,
            vec![
                (Rational64::new(0, 1), 1, vec![0]),
                (Rational64::new(-4, 3), 3, vec![2]),
                (Rational64::new(-1, 1), 4, vec![1, 3]),
            ]
        );
    }

    #[test]
    fn delsarte_strength() {
        let s = johnson_scheme(5, 2).unwrap();
        // Pairs through element 1 are the first four lexicographic points.
        let through_one: Vec<usize> = (0..4).collect();
        assert_eq!(t_design_strength(&s, &through_one).unwrap(), 0);
        // The whole point set has full strength.
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(t_design_strength(&s, &all).unwrap(), 2);
        // Fano plane: strength 2 in J(7,3).
        let s73 = johnson_scheme(7, 3).unwrap();
        let points = johnson_points(7, 3).unwrap();
        let fano: Vec<usize> = fano_plane()
            .masks
            .iter()
            .map(|m| points.iter().position(|p| p == m).unwrap())
            .collect();
        assert_eq!(t_design_strength(&s73, &fano).unwrap(), 2);
        // Validation.
        assert!(matches!(
            t_design_strength(&s, &[]),
            Err(Error::EmptyDesign)
        ));
        assert!(matches!(
            t_design_strength(&s, &[1, 1]),
            Err(Error::DuplicateVertex { .. })
        ));
        assert!(matches!(
            t_design_strength(&s, &[10]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn delsarte_strength_is_exact_on_hamming() {
        let s = hamming_scheme(7).unwrap();
        let h3 = crate::codes::hamming(3).unwrap();
        assert_eq!(t_design_strength(&s, &h3.codeword_vertices()).unwrap(), 3);
    }

    #[test]
    fn classical_designs() {
        let fano = fano_plane();
        assert_eq!(classical_t_design(&fano, 2).unwrap(), Some(1));
        assert_eq!(classical_t_design(&fano, 1).unwrap(), Some(3));
        assert_eq!(classical_t_design(&fano, 0).unwrap(), Some(7));
        assert_eq!(classical_t_design(&fano, 3).unwrap(), None);
        assert!(matches!(
            classical_t_design(&fano, 4),
            Err(Error::OutOfRange { .. })
        ));

        // Pairs through element 1 in [5]: element 1 lies in 4 blocks,
        // element 2 in 1 — not even a 1-design.
        let through_one =
            BlockFamily::new(5, 2, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![1, 5]]).unwrap();
        assert_eq!(classical_t_design(&through_one, 1).unwrap(), None);

        // The complete design: λ = C(n−t, k−t).
        let all_blocks: Vec<Vec<usize>> = (1..=5usize).combinations(2).collect();
        let complete = BlockFamily::new(5, 2, all_blocks).unwrap();
        assert_eq!(classical_t_design(&complete, 1).unwrap(), Some(4));
        assert_eq!(classical_t_design(&complete, 2).unwrap(), Some(1));
    }

    #[test]
    fn block_family_validation() {
        assert!(matches!(
            BlockFamily::new(5, 2, vec![vec![1, 1]]),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            BlockFamily::new(5, 2, vec![vec![1, 6]]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            BlockFamily::new(5, 2, vec![vec![1, 2], vec![2, 1]]),
            Err(Error::Parse { .. })
        ));
        let parsed = BlockFamily::parse(7, 3, "1 2 4\n2 3 5\n").unwrap();
        assert_eq!(parsed.blocks().len(), 2);
        assert_eq!(parsed.blocks()[0], vec![1, 2, 4]);
        let from_masks = BlockFamily::from_point_masks(5, 2, &[0b00011, 0b00101]).unwrap();
        assert_eq!(from_masks.blocks(), &[vec![1, 2], vec![1, 3]]);
    }
}
