//! Implementation of the `gdesign` command line: input resolution, the
//! report document model, and deterministic rendering.
//!
//! Every command produces a [`Document`]; rendering to the human table or
//! the structured (JSON) form is a pure function of it, so repeated runs
//! with identical inputs are byte-identical.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

use std::fmt::Write as _;
use std::path::Path;

use gdesign_core::cube::CubeEigenspaceInfo;
use gdesign_core::{
    code_from_check_matrix, cube_decomposition, cube_design_report, cube_graph, design_report,
    design_report_with_tolerance, dual, exhaustive_design_search,
    exhaustive_design_search_with_tolerance, fixture, hamming, is_stable_set, lift, project,
    reference, spectral_decomposition, BinaryLinearCode, BinaryMatrix, CubeGraph, Design, Error,
    Fixture, Graph, Result, SpectralDecomposition,
};
use serde::{Deserialize, Serialize};

/// Output format of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Human-readable aligned table.
    Table,
    /// Machine document (JSON); round-trips losslessly.
    Structured,
}

/// Graph selection, exactly one source.
#[derive(Clone, Debug)]
pub enum GraphChoice {
    /// Distance cube `Q_n(d)`, verified on the exact character path.
    Cube {
        /// Cube dimension `n`.
        n: usize,
        /// Neighborhood distance `d`.
        d: usize,
    },
    /// A named fixture (`complete:5`, `petersen`, …), floating path.
    Fixture(String),
    /// A JSON graph file, floating path.
    File(String),
}

/// One eigenspace line of a spectrum or verification document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenspaceRow {
    /// Eigenvalue `λ` of `AD⁻¹ − I` (exact fraction or 12-digit decimal).
    pub eigenvalue: String,
    /// Eigenvalue `μ = λ + 1` of `AD⁻¹`.
    pub random_walk_eigenvalue: String,
    /// Eigenspace dimension.
    pub dimension: usize,
    /// Tie group in the frequency order.
    pub tie_group: usize,
    /// Merged cube weight classes, when the graph is a distance cube.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weight_classes: Option<Vec<usize>>,
    /// Whether the design integrates this eigenspace (verify only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub integrated: Option<bool>,
}

/// One row of a reproduction diff.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRowDoc {
    /// What the row checks.
    pub label: String,
    /// The embedded reference value.
    pub expected: String,
    /// The recomputed value.
    pub computed: String,
    /// Whether they agree.
    pub matched: bool,
}

/// The structured report a command produces.  Serialization is lossless:
/// parsing the JSON back yields an equal document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Document {
    /// `spectrum`: eigenspaces in frequency order.
    Spectrum {
        /// Canonical description of the input graph.
        input: String,
        /// `"exact"` or `"floating"`.
        arithmetic: String,
        /// Eigenspace rows, storage (frequency) order.
        eigenspaces: Vec<EigenspaceRow>,
    },
    /// `verify`: a design report plus stability.
    Verify {
        /// Canonical description of the input graph.
        input: String,
        /// The code specification, when the design came from one.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        code: Option<String>,
        /// `"exact"` or `"floating"`.
        arithmetic: String,
        /// Ambient vertex count.
        vertex_count: usize,
        /// The design, sorted ascending.
        design: Vec<usize>,
        /// Eigenspace rows with verdicts.
        eigenspaces: Vec<EigenspaceRow>,
        /// The design rank `k`.
        k: usize,
        /// Total dimension of the integrated prefix.
        integrated_dimension: usize,
        /// `|W| / integrated_dimension` as a fraction, if defined.
        efficacy: Option<String>,
        /// Whether the design is extremal.
        extremal: bool,
        /// Whether the design spans no edge of the graph.
        stable: bool,
    },
    /// `search`: exhaustive minimum-efficacy search.
    Search {
        /// Canonical description of the input graph.
        input: String,
        /// `"exact"` or `"floating"`.
        arithmetic: String,
        /// Size cap of the enumeration.
        max_size: usize,
        /// Number of subsets examined.
        subsets_examined: u64,
        /// Whether every nonempty proper subset was covered.
        exhaustive: bool,
        /// The global minimum efficacy found, as a fraction.
        best_efficacy: Option<String>,
        /// Every minimizing subset, in enumeration order.
        witnesses: Vec<Vec<usize>>,
    },
    /// `reproduce`: recomputed reference values with a diff.
    Reproduce {
        /// The reproduction target name.
        target: String,
        /// Cell-level diff rows.
        rows: Vec<CheckRowDoc>,
        /// Whether every row matched.
        passed: bool,
    },
}

impl Document {
    /// Whether the command succeeded in full (only reproduction can fail
    /// while still producing a document).
    pub fn passed(&self) -> bool {
        match self {
            Document::Reproduce { passed, .. } => *passed,
            _ => true,
        }
    }
}

/// Map an error to the process exit code: resource caps are `4`, every
/// other (input/usage) failure is `2`.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::TooLarge { .. } => 4,
        _ => 2,
    }
}

fn parse_error(message: String) -> Error {
    Error::Parse { message }
}

/// A resolved graph input: the exact cube path or a floating decomposition.
enum Source {
    Cube(CubeGraph),
    Floating(Box<FloatingSource>),
}

/// The floating-path payload: a graph plus its eigendecomposition.
struct FloatingSource {
    description: String,
    graph: Graph,
    decomposition: SpectralDecomposition,
}

fn describe_cube(cube: &CubeGraph) -> String {
    format!("cube n={} distance={}", cube.dimension(), cube.distance())
}

fn resolve(choice: &GraphChoice) -> Result<Source> {
    match choice {
        GraphChoice::Cube { n, d } => Ok(Source::Cube(cube_graph(*n, *d)?)),
        GraphChoice::Fixture(spec) => {
            let graph = fixture(Fixture::parse(spec)?)?;
            let decomposition = spectral_decomposition(&graph)?;
            Ok(Source::Floating(Box::new(FloatingSource {
                description: format!("fixture {spec}"),
                graph,
                decomposition,
            })))
        }
        GraphChoice::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| parse_error(format!("cannot read graph file {path:?}: {e}")))?;
            let graph = Graph::from_json(&text)?;
            let decomposition = spectral_decomposition(&graph)?;
            Ok(Source::Floating(Box::new(FloatingSource {
                description: format!("graph {path}"),
                graph,
                decomposition,
            })))
        }
    }
}

fn reject_tolerance_on_exact(tolerance: Option<f64>) -> Result<()> {
    if tolerance.is_some() {
        return Err(parse_error(
            "--tolerance applies to the floating path only; distance cubes are verified exactly"
                .to_string(),
        ));
    }
    Ok(())
}

fn cube_rows(infos: &[CubeEigenspaceInfo], verdicts: Option<&[bool]>) -> Vec<EigenspaceRow> {
    infos
        .iter()
        .enumerate()
        .map(|(i, info)| EigenspaceRow {
            eigenvalue: info.eigenvalue.to_string(),
            random_walk_eigenvalue: info.random_walk_eigenvalue.to_string(),
            dimension: info.dimension,
            tie_group: info.tie_group,
            weight_classes: Some(info.classes.clone()),
            integrated: verdicts.map(|v| v[i]),
        })
        .collect()
}

fn floating_rows(
    decomposition: &SpectralDecomposition,
    verdicts: Option<&[bool]>,
) -> Vec<EigenspaceRow> {
    decomposition
        .eigenspaces()
        .iter()
        .enumerate()
        .map(|(i, space)| EigenspaceRow {
            eigenvalue: space.eigenvalue().to_string(),
            random_walk_eigenvalue: space.random_walk_eigenvalue().to_string(),
            dimension: space.dimension(),
            tie_group: space.tie_group(),
            weight_classes: if space.classes().is_empty() {
                None
            } else {
                Some(space.classes().to_vec())
            },
            integrated: verdicts.map(|v| v[i]),
        })
        .collect()
}

fn arithmetic_of(decomposition: &SpectralDecomposition) -> String {
    if decomposition.is_exact() {
        "exact".to_string()
    } else {
        "floating".to_string()
    }
}

/// The `spectrum` command.
pub fn cmd_spectrum(choice: &GraphChoice) -> Result<Document> {
    match resolve(choice)? {
        Source::Cube(cube) => Ok(Document::Spectrum {
            input: describe_cube(&cube),
            arithmetic: "exact".to_string(),
            eigenspaces: cube_rows(&cube.spectrum(), None),
        }),
        Source::Floating(floating) => Ok(Document::Spectrum {
            input: floating.description,
            arithmetic: arithmetic_of(&floating.decomposition),
            eigenspaces: floating_rows(&floating.decomposition, None),
        }),
    }
}

/// Parse a code specification: `hamming:N`, `lift:…`, `project:…`,
/// `dual:…` (prefixes compose), or `file:PATH` with one 0/1 row per line.
pub fn parse_code_spec(spec: &str) -> Result<BinaryLinearCode> {
    if let Some(rest) = spec.strip_prefix("hamming:") {
        let r: usize = rest
            .parse()
            .map_err(|_| parse_error(format!("invalid Hamming parameter {rest:?}")))?;
        hamming(r)
    } else if let Some(rest) = spec.strip_prefix("lift:") {
        lift(&parse_code_spec(rest)?)
    } else if let Some(rest) = spec.strip_prefix("project:") {
        project(&parse_code_spec(rest)?)
    } else if let Some(rest) = spec.strip_prefix("dual:") {
        Ok(dual(&parse_code_spec(rest)?))
    } else if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| parse_error(format!("cannot read code file {path:?}: {e}")))?;
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let matrix = BinaryMatrix::from_strings(&rows)?;
        code_from_check_matrix(&matrix)
    } else {
        Err(parse_error(format!(
            "unknown code spec {spec:?} (expected hamming:N, lift:…, project:…, dual:…, \
             or file:PATH)"
        )))
    }
}

/// Resolve `--design` as inline text or a file of vertex ids / binary words.
fn parse_design_arg(text: &str, vertex_count: usize, cube_bits: Option<usize>) -> Result<Design> {
    let content = if Path::new(text).is_file() {
        std::fs::read_to_string(text)
            .map_err(|e| parse_error(format!("cannot read design file {text:?}: {e}")))?
    } else {
        text.to_string()
    };
    Design::parse(&content, vertex_count, cube_bits)
}

/// A design spans no edge of `Q_n(d)` iff all pairwise distances exceed `d`.
fn cube_stable(words: &[usize], d: usize) -> bool {
    words.iter().enumerate().all(|(i, &x)| {
        words[i + 1..]
            .iter()
            .all(|&y| (x ^ y).count_ones() as usize > d)
    })
}

/// The `verify` command.
pub fn cmd_verify(
    choice: &GraphChoice,
    code: Option<&str>,
    design: Option<&str>,
    tolerance: Option<f64>,
) -> Result<Document> {
    let source = resolve(choice)?;
    let (code_echo, design) = match (code, design) {
        (Some(spec), None) => {
            let Source::Cube(cube) = &source else {
                return Err(parse_error(
                    "--code defines a set of cube vertices; use it with --cube".to_string(),
                ));
            };
            let parsed = parse_code_spec(spec)?;
            if parsed.length() != cube.dimension() {
                return Err(Error::DimensionMismatch {
                    expected: cube.dimension(),
                    found: parsed.length(),
                });
            }
            let design =
                Design::from_vertex_count(cube.vertex_count(), parsed.codeword_vertices())?;
            (Some(spec.to_string()), design)
        }
        (None, Some(text)) => {
            let (vertex_count, bits) = match &source {
                Source::Cube(cube) => (cube.vertex_count(), Some(cube.dimension())),
                Source::Floating(floating) => (floating.graph.vertex_count(), None),
            };
            (None, parse_design_arg(text, vertex_count, bits)?)
        }
        _ => {
            return Err(parse_error(
                "verify needs exactly one of --code or --design".to_string(),
            ));
        }
    };

    match source {
        Source::Cube(cube) => {
            reject_tolerance_on_exact(tolerance)?;
            let out = cube_design_report(cube.dimension(), cube.distance(), design.vertices())?;
            Ok(Document::Verify {
                input: describe_cube(&cube),
                code: code_echo,
                arithmetic: "exact".to_string(),
                vertex_count: cube.vertex_count(),
                design: design.vertices().to_vec(),
                eigenspaces: cube_rows(&out.eigenspaces, Some(&out.report.verdicts)),
                k: out.report.k,
                integrated_dimension: out.report.integrated_dimension,
                efficacy: out.report.efficacy.map(|r| r.to_string()),
                extremal: out.report.extremal,
                stable: cube_stable(design.vertices(), cube.distance()),
            })
        }
        Source::Floating(floating) => {
            let FloatingSource {
                description,
                graph,
                decomposition,
            } = *floating;
            let report = match tolerance {
                Some(tol) => design_report_with_tolerance(&decomposition, &design, tol)?,
                None => design_report(&decomposition, &design)?,
            };
            Ok(Document::Verify {
                input: description,
                code: code_echo,
                arithmetic: arithmetic_of(&decomposition),
                vertex_count: graph.vertex_count(),
                design: design.vertices().to_vec(),
                eigenspaces: floating_rows(&decomposition, Some(&report.verdicts)),
                k: report.k,
                integrated_dimension: report.integrated_dimension,
                efficacy: report.efficacy.map(|r| r.to_string()),
                extremal: report.extremal,
                stable: is_stable_set(&graph, design.vertices())?,
            })
        }
    }
}

/// The `search` command.
pub fn cmd_search(
    choice: &GraphChoice,
    max_size: usize,
    tolerance: Option<f64>,
) -> Result<Document> {
    let (input, arithmetic, decomposition) = match resolve(choice)? {
        Source::Cube(cube) => {
            reject_tolerance_on_exact(tolerance)?;
            let decomposition = cube_decomposition(cube.dimension(), cube.distance())?;
            (describe_cube(&cube), "exact".to_string(), decomposition)
        }
        Source::Floating(floating) => {
            let arithmetic = arithmetic_of(&floating.decomposition);
            (floating.description, arithmetic, floating.decomposition)
        }
    };
    let result = match tolerance {
        Some(tol) => exhaustive_design_search_with_tolerance(&decomposition, max_size, tol)?,
        None => exhaustive_design_search(&decomposition, max_size)?,
    };
    Ok(Document::Search {
        input,
        arithmetic,
        max_size,
        subsets_examined: result.subsets_examined,
        exhaustive: result.exhaustive,
        best_efficacy: result.best_efficacy.map(|r| r.to_string()),
        witnesses: result.witnesses,
    })
}

/// The `reproduce` command.
pub fn cmd_reproduce(target: &str) -> Result<Document> {
    let check = reference::check(target)?;
    let passed = check.passed();
    Ok(Document::Reproduce {
        target: check.target.to_string(),
        rows: check
            .rows
            .into_iter()
            .map(|row| CheckRowDoc {
                label: row.label,
                expected: row.expected,
                computed: row.computed,
                matched: row.matched,
            })
            .collect(),
        passed,
    })
}

/// Render a document in the requested format.  Rendering is deterministic:
/// equal documents produce byte-identical output.
pub fn render(document: &Document, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(document).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Table => render_table(document),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-align `cells` into columns of their maximum widths.
fn align(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .map(|r| r.get(c).map_or(0, |cell| cell.chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let pad = widths[c].saturating_sub(cell.chars().count());
            line.push_str(cell);
            if c + 1 < row.len() {
                line.push_str(&" ".repeat(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn eigenspace_table(rows: &[EigenspaceRow]) -> String {
    let with_classes = rows.iter().any(|r| r.weight_classes.is_some());
    let with_verdicts = rows.iter().any(|r| r.integrated.is_some());
    let mut table: Vec<Vec<String>> = Vec::new();
    let mut header = vec![
        "#".to_string(),
        "eigenvalue".to_string(),
        "random-walk".to_string(),
        "dimension".to_string(),
        "tie-group".to_string(),
    ];
    if with_classes {
        header.push("weight-classes".to_string());
    }
    if with_verdicts {
        header.push("integrated".to_string());
    }
    table.push(header);
    for (i, row) in rows.iter().enumerate() {
        let mut cells = vec![
            i.to_string(),
            row.eigenvalue.clone(),
            row.random_walk_eigenvalue.clone(),
            row.dimension.to_string(),
            row.tie_group.to_string(),
        ];
        if with_classes {
            cells.push(match &row.weight_classes {
                Some(classes) => classes
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                None => "-".to_string(),
            });
        }
        if with_verdicts {
            cells.push(yes_no(row.integrated.unwrap_or(false)).to_string());
        }
        table.push(cells);
    }
    align(&table)
}

fn vertex_list(vertices: &[usize]) -> String {
    vertices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_table(document: &Document) -> String {
    let mut out = String::new();
    match document {
        Document::Spectrum {
            input,
            arithmetic,
            eigenspaces,
        } => {
            let _ = writeln!(out, "spectrum: {input} [{arithmetic}]");
            out.push_str(&eigenspace_table(eigenspaces));
        }
        Document::Verify {
            input,
            code,
            arithmetic,
            vertex_count,
            design,
            eigenspaces,
            k,
            integrated_dimension,
            efficacy,
            extremal,
            stable,
        } => {
            let _ = writeln!(out, "verify: {input} [{arithmetic}]");
            if let Some(code) = code {
                let _ = writeln!(out, "code: {code}");
            }
            let _ = writeln!(
                out,
                "design ({} of {} vertices): {}",
                design.len(),
                vertex_count,
                vertex_list(design)
            );
            out.push_str(&eigenspace_table(eigenspaces));
            let _ = writeln!(out, "k-design rank: {k}");
            let _ = writeln!(out, "integrated dimension: {integrated_dimension}");
            let _ = writeln!(
                out,
                "efficacy: {}",
                efficacy.as_deref().unwrap_or("undefined")
            );
            let _ = writeln!(out, "extremal: {}", yes_no(*extremal));
            let _ = writeln!(out, "stable: {}", yes_no(*stable));
        }
        Document::Search {
            input,
            arithmetic,
            max_size,
            subsets_examined,
            exhaustive,
            best_efficacy,
            witnesses,
        } => {
            let _ = writeln!(out, "search: {input} [{arithmetic}]");
            let _ = writeln!(out, "max subset size: {max_size}");
            let _ = writeln!(
                out,
                "subsets examined: {subsets_examined} ({})",
                if *exhaustive {
                    "every nonempty proper subset"
                } else {
                    "partial"
                }
            );
            let _ = writeln!(
                out,
                "best efficacy: {}",
                best_efficacy.as_deref().unwrap_or("undefined")
            );
            let _ = writeln!(out, "witnesses ({}):", witnesses.len());
            for witness in witnesses {
                let _ = writeln!(out, "  {}", vertex_list(witness));
            }
        }
        Document::Reproduce {
            target,
            rows,
            passed,
        } => {
            let _ = writeln!(out, "reproduce: {target}");
            let mut table: Vec<Vec<String>> = vec![vec![
                "check".to_string(),
                "expected".to_string(),
                "computed".to_string(),
                "".to_string(),
            ]];
            for row in rows {
                table.push(vec![
                    row.label.clone(),
                    row.expected.clone(),
                    row.computed.clone(),
                    if row.matched { "ok" } else { "MISMATCH" }.to_string(),
                ]);
            }
            out.push_str(&align(&table));
            let _ = writeln!(out, "result: {}", if *passed { "pass" } else { "FAIL" });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_round_trip_through_json() {
        let doc = cmd_spectrum(&GraphChoice::Cube { n: 3, d: 1 }).unwrap();
        let json = render(&doc, Format::Structured);
        let back: Document = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);

        let doc = cmd_verify(
            &GraphChoice::Cube { n: 3, d: 1 },
            Some("hamming:2"),
            None,
            None,
        )
        .unwrap();
        let back: Document = serde_json::from_str(&render(&doc, Format::Structured)).unwrap();
        assert_eq!(doc, back);

        let doc = cmd_search(&GraphChoice::Fixture("complete:5".to_string()), 1, None).unwrap();
        let back: Document = serde_json::from_str(&render(&doc, Format::Structured)).unwrap();
        assert_eq!(doc, back);

        let doc = cmd_reproduce("table2").unwrap();
        assert!(doc.passed());
        let back: Document = serde_json::from_str(&render(&doc, Format::Structured)).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn reproduce_documents_fail_on_any_mismatched_row() {
        let doc = Document::Reproduce {
            target: "table2".to_string(),
            rows: vec![
                CheckRowDoc {
                    label: "a".to_string(),
                    expected: "1".to_string(),
                    computed: "1".to_string(),
                    matched: true,
                },
                CheckRowDoc {
                    label: "b".to_string(),
                    expected: "1".to_string(),
                    computed: "2".to_string(),
                    matched: false,
                },
            ],
            passed: false,
        };
        assert!(!doc.passed());
        assert!(render(&doc, Format::Table).contains("result: FAIL"));
    }

    #[test]
    fn code_specs_compose() {
        let lifted = parse_code_spec("lift:hamming:2").unwrap();
        assert_eq!(lifted.length(), 4);
        assert_eq!(lifted.codewords(), &[0b0000, 0b0111, 0b1000, 0b1111]);
        let double = parse_code_spec("lift:lift:hamming:2").unwrap();
        assert_eq!(double.length(), 5);
        let dual = parse_code_spec("dual:hamming:3").unwrap();
        assert_eq!(dual.codewords().len(), 8);
        assert!(parse_code_spec("nonsense").is_err());
        assert!(parse_code_spec("hamming:x").is_err());
    }

    #[test]
    fn tolerance_is_rejected_on_the_exact_path() {
        let err = cmd_verify(
            &GraphChoice::Cube { n: 3, d: 1 },
            None,
            Some("0,7"),
            Some(1e-6),
        )
        .unwrap_err();
        assert_eq!(exit_code(&err), 2);
        let err = cmd_search(&GraphChoice::Cube { n: 3, d: 1 }, 2, Some(1e-6)).unwrap_err();
        assert_eq!(exit_code(&err), 2);
    }

    #[test]
    fn resource_caps_exit_four() {
        let err = cmd_search(&GraphChoice::Cube { n: 12, d: 1 }, 2048, None).unwrap_err();
        assert_eq!(exit_code(&err), 4);
    }
}
