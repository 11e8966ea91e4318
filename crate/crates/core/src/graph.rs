//! Graph construction, named fixtures, and JSON interchange.
//!
//! Graphs here are finite, simple, undirected, and connected, with vertices
//! `0..n`.  Connectivity (and the absence of isolated vertices it implies for
//! `n ≥ 2`) guarantees the degree matrix is invertible, so the normalized
//! Laplacian `L = AD⁻¹ − I` always exists.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, simple, undirected, connected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Build a graph from a vertex count and an edge list.
///
/// Edges may be given in either orientation; they are normalized to
/// `(min, max)` and sorted.  Fails on out-of-range endpoints, loops,
/// duplicate edges, and disconnected results.
///
/// # Example
///
/// ```
/// use gdesign_core::build_graph;
///
/// let path = build_graph(3, &[(0, 1), (2, 1)]).unwrap();
/// assert_eq!(path.degree(1), 2);
/// assert!(build_graph(3, &[(0, 1)]).is_err()); // vertex 2 isolated
/// ```
pub fn build_graph(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    if vertex_count < 2 {
        return Err(Error::OutOfSupportedRange {
            what: "vertex count",
            value: vertex_count,
            min: 2,
            max: usize::MAX,
        });
    }
    let mut normalized = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        for endpoint in [a, b] {
            if endpoint >= vertex_count {
                return Err(Error::OutOfRange {
                    index: endpoint,
                    bound: vertex_count,
                });
            }
        }
        if a == b {
            return Err(Error::Loop { vertex: a });
        }
        normalized.push((a.min(b), a.max(b)));
    }
    normalized.sort_unstable();
    if let Some(pair) = normalized.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateEdge {
            a: pair[0].0,
            b: pair[0].1,
        });
    }

    let mut neighbors = vec![Vec::new(); vertex_count];
    for &(a, b) in &normalized {
        neighbors[a].push(b);
        neighbors[b].push(a);
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    let degrees: Vec<usize> = neighbors.iter().map(Vec::len).collect();

    // Breadth-first search from vertex 0.
    let mut seen = vec![false; vertex_count];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &u in &neighbors[v] {
            if !seen[u] {
                seen[u] = true;
                reached += 1;
                queue.push_back(u);
            }
        }
    }
    if reached != vertex_count {
        return Err(Error::Disconnected);
    }

    Ok(Graph {
        vertex_count,
        edges: normalized,
        neighbors,
        degrees,
        labels: None,
    })
}

impl Graph {
    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The normalized, sorted edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of a vertex.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Degree of a vertex.
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Whether `{a, b}` is an edge.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.neighbors[a].binary_search(&b).is_ok()
    }

    /// `Some(d)` if every vertex has degree `d`, else `None`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees[0];
        self.degrees.iter().all(|&x| x == d).then_some(d)
    }

    /// Optional display labels, one per vertex.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Attach display labels (one per vertex).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.vertex_count {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Dense adjacency matrix `A`.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.vertex_count, self.vertex_count);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// Dense random-walk matrix `AD⁻¹` (column-stochastic).
    pub fn random_walk_matrix(&self) -> DMatrix<f64> {
        let mut m = self.adjacency_matrix();
        for j in 0..self.vertex_count {
            let d = self.degrees[j] as f64;
            for i in 0..self.vertex_count {
                m[(i, j)] /= d;
            }
        }
        m
    }

    /// Dense normalized Laplacian `L = AD⁻¹ − I`.
    pub fn normalized_laplacian(&self) -> DMatrix<f64> {
        let mut m = self.random_walk_matrix();
        for i in 0..self.vertex_count {
            m[(i, i)] -= 1.0;
        }
        m
    }

    /// Per-vertex neighbor bitmasks, for graphs on at most 64 vertices.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>> {
        if self.vertex_count > 64 {
            return Err(Error::TooLarge {
                context: "bitset operations need at most 64 vertices",
                size: self.vertex_count as u64,
                limit: 64,
            });
        }
        let mut masks = vec![0u64; self.vertex_count];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        Ok(masks)
    }

    /// Number of edges with exactly one endpoint in `inside`.
    pub(crate) fn boundary_edge_count(&self, inside: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| inside[u] != inside[v])
            .count()
    }

    /// Serialize to the JSON interchange format `{"n": …, "edges": [[a, b], …]}`.
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.vertex_count,
            edges: self.edges.clone(),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    /// Deserialize from the JSON interchange format.
    pub fn from_json(text: &str) -> Result<Graph> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            message: format!("graph file: {e}"),
        })?;
        build_graph(file.n, &file.edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// The named graph fixtures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// Complete graph `K_n` (`n ≥ 2`).
    Complete(usize),
    /// Complete bipartite graph `K_{m,n}` (`m, n ≥ 1`).
    CompleteBipartite(usize, usize),
    /// The truncated tetrahedron: 3-regular on 12 vertices.
    TruncatedTetrahedron,
    /// The Petersen graph as the Kneser graph `KG(5,2)`: vertices are the
    /// 2-subsets of `{1..5}` in lexicographic order, adjacent when disjoint.
    Petersen,
}

impl Fixture {
    /// Parse a CLI-style fixture spec: `complete:5`,
    /// `complete_bipartite:4,4`, `truncated_tetrahedron`, `petersen`.
    pub fn parse(spec: &str) -> Result<Fixture> {
        let (name, args) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let unknown = || Error::UnknownFixture {
            name: spec.to_string(),
        };
        let parse_usize = |t: &str| t.trim().parse::<usize>().map_err(|_| unknown());
        match (name, args) {
            ("complete", Some(a)) => Ok(Fixture::Complete(parse_usize(a)?)),
            ("complete_bipartite", Some(a)) => {
                let (m, n) = a.split_once(',').ok_or_else(unknown)?;
                Ok(Fixture::CompleteBipartite(parse_usize(m)?, parse_usize(n)?))
            }
            ("truncated_tetrahedron", None) => Ok(Fixture::TruncatedTetrahedron),
            ("petersen", None) => Ok(Fixture::Petersen),
            _ => Err(unknown()),
        }
    }
}

/// Build one of the named fixtures.
///
/// # Example
///
/// ```
/// use gdesign_core::{fixture, Fixture};
///
/// let petersen = fixture(Fixture::Petersen).unwrap();
/// assert_eq!(petersen.vertex_count(), 10);
/// assert_eq!(petersen.regular_degree(), Some(3));
/// ```
pub fn fixture(which: Fixture) -> Result<Graph> {
    match which {
        Fixture::Complete(n) => {
            if n < 2 {
                return Err(Error::OutOfSupportedRange {
                    what: "complete graph order",
                    value: n,
                    min: 2,
                    max: usize::MAX,
                });
            }
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    edges.push((a, b));
                }
            }
            build_graph(n, &edges)
        }
        Fixture::CompleteBipartite(m, n) => {
            if m < 1 || n < 1 {
                return Err(Error::OutOfSupportedRange {
                    what: "bipartite side size",
                    value: m.min(n),
                    min: 1,
                    max: usize::MAX,
                });
            }
            let mut edges = Vec::new();
            for a in 0..m {
                for b in 0..n {
                    edges.push((a, m + b));
                }
            }
            build_graph(m + n, &edges)
        }
        Fixture::TruncatedTetrahedron => {
            // Outer 9-cycle a1..a9 (vertices 0..9), chords closing three
            // outer triangles, an inner triangle b1 b2 b3 (vertices 9..12),
            // and three spokes.  3-regular on 12 vertices with 18 edges and
            // four vertex-disjoint triangles.
            let mut edges: Vec<(usize, usize)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
            edges.extend([(0, 2), (3, 5), (6, 8)]);
            edges.extend([(9, 10), (10, 11), (9, 11)]);
            edges.extend([(1, 9), (4, 10), (7, 11)]);
            build_graph(12, &edges)
        }
        Fixture::Petersen => {
            let pairs = two_subsets_of_five();
            let mut edges = Vec::new();
            for (i, a) in pairs.iter().enumerate() {
                for (j, b) in pairs.iter().enumerate().skip(i + 1) {
                    if a.iter().all(|x| !b.contains(x)) {
                        edges.push((i, j));
                    }
                }
            }
            let labels = pairs
                .iter()
                .map(|p| format!("{{{},{}}}", p[0] + 1, p[1] + 1))
                .collect();
            build_graph(10, &edges)?.with_labels(labels)
        }
    }
}

fn two_subsets_of_five() -> Vec<[usize; 2]> {
    let mut pairs = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            pairs.push([a, b]);
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(
            build_graph(3, &[(0, 3), (1, 2)]).unwrap_err(),
            Error::OutOfRange { index: 3, bound: 3 }
        );
        assert_eq!(
            build_graph(3, &[(1, 1), (0, 2)]).unwrap_err(),
            Error::Loop { vertex: 1 }
        );
        assert_eq!(
            build_graph(3, &[(0, 1), (1, 0), (1, 2)]).unwrap_err(),
            Error::DuplicateEdge { a: 0, b: 1 }
        );
        assert_eq!(
            build_graph(4, &[(0, 1), (2, 3)]).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn complete_graph_shape() {
        let k5 = fixture(Fixture::Complete(5)).unwrap();
        assert_eq!(k5.vertex_count(), 5);
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.regular_degree(), Some(4));
    }

    #[test]
    fn complete_bipartite_shape() {
        let k44 = fixture(Fixture::CompleteBipartite(4, 4)).unwrap();
        assert_eq!(k44.vertex_count(), 8);
        assert_eq!(k44.edge_count(), 16);
        assert_eq!(k44.regular_degree(), Some(4));
        let k23 = fixture(Fixture::CompleteBipartite(2, 3)).unwrap();
        assert_eq!(k23.regular_degree(), None);
        assert_eq!(k23.degree(0), 3);
        assert_eq!(k23.degree(2), 2);
    }

    #[test]
    fn truncated_tetrahedron_shape() {
        let tt = fixture(Fixture::TruncatedTetrahedron).unwrap();
        assert_eq!(tt.vertex_count(), 12);
        assert_eq!(tt.edge_count(), 18);
        assert_eq!(tt.regular_degree(), Some(3));
        // Four vertex-disjoint triangles: three on the outer rim, one inner.
        for tri in [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]] {
            assert!(tt.has_edge(tri[0], tri[1]));
            assert!(tt.has_edge(tri[1], tri[2]));
            assert!(tt.has_edge(tri[0], tri[2]));
        }
    }

    #[test]
    fn petersen_shape() {
        let p = fixture(Fixture::Petersen).unwrap();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.regular_degree(), Some(3));
        // Girth 5: no triangles, no 4-cycles through vertex 0.
        for &a in p.neighbors(0) {
            for &b in p.neighbors(0) {
                if a < b {
                    assert!(!p.has_edge(a, b));
                    let common: Vec<usize> = p
                        .neighbors(a)
                        .iter()
                        .filter(|x| p.neighbors(b).contains(x))
                        .copied()
                        .collect();
                    assert_eq!(common, vec![0]);
                }
            }
        }
        assert_eq!(p.labels().unwrap()[0], "{1,2}");
    }

    #[test]
    fn fixture_parsing() {
        assert_eq!(Fixture::parse("complete:5").unwrap(), Fixture::Complete(5));
        assert_eq!(
            Fixture::parse("complete_bipartite:4,4").unwrap(),
            Fixture::CompleteBipartite(4, 4)
        );
        assert_eq!(Fixture::parse("petersen").unwrap(), Fixture::Petersen);
        assert!(Fixture::parse("dodecahedron").is_err());
        assert!(Fixture::parse("complete").is_err());
        assert!(Fixture::parse("petersen:3").is_err());
    }

    #[test]
    fn json_round_trip() {
        let tt = fixture(Fixture::TruncatedTetrahedron).unwrap();
        let text = tt.to_json();
        let back = Graph::from_json(&text).unwrap();
        assert_eq!(back.edges(), tt.edges());
        assert!(Graph::from_json("{\"n\": 3}").is_err());
        assert!(Graph::from_json("{\"n\": 3, \"edges\": [[0,1],[1,2],[0,5]]}").is_err());
    }

    #[test]
    fn matrices_are_consistent() {
        let k23 = fixture(Fixture::CompleteBipartite(2, 3)).unwrap();
        let walk = k23.random_walk_matrix();
        // Column-stochastic.
        for j in 0..5 {
            let col_sum: f64 = (0..5).map(|i| walk[(i, j)]).sum();
            assert!((col_sum - 1.0).abs() < 1e-12);
        }
        let lap = k23.normalized_laplacian();
        for j in 0..5 {
            assert!((lap[(j, j)] + 1.0).abs() < 1e-12);
        }
    }
}
