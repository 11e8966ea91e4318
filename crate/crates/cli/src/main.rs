//! `gdesign`: spectra, design verification, exhaustive design search, and
//! reference reproduction for graphical designs.

#![forbid(unsafe_code)]

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gdesign_cli::{
    cmd_reproduce, cmd_search, cmd_spectrum, cmd_verify, exit_code, render, Document, Format,
    GraphChoice,
};

#[derive(Parser)]
#[command(
    name = "gdesign",
    version,
    about = "Graphical designs: averaging sets for graph eigenvectors",
    long_about = "Compute spectra of the normalized walk matrix AD⁻¹, verify vertex subsets \
                  as graphical designs (exactly on distance cubes, numerically elsewhere), \
                  search exhaustively for minimum-efficacy designs, and reproduce the \
                  library's reference tables.\n\nExit codes: 0 success, 2 parse/usage error, \
                  3 reproduction mismatch, 4 resource cap exceeded."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Exactly one graph source.
#[derive(Args)]
struct GraphArgs {
    /// Distance cube Q_n(d): the cube dimension n (2..=20; exact arithmetic)
    #[arg(long, value_name = "N")]
    cube: Option<usize>,

    /// Distance d of the cube graph (default 1; requires --cube)
    #[arg(long, value_name = "D", requires = "cube")]
    dist: Option<usize>,

    /// Named fixture: complete:N, complete_bipartite:M,N,
    /// truncated_tetrahedron, petersen
    #[arg(long, value_name = "NAME[:ARGS]", conflicts_with_all = ["cube", "dist"])]
    fixture: Option<String>,

    /// JSON graph file (as produced by the library's serializer)
    #[arg(long, value_name = "FILE", conflicts_with_all = ["cube", "dist", "fixture"])]
    graph: Option<String>,
}

impl GraphArgs {
    fn choice(&self) -> Result<GraphChoice, String> {
        match (&self.cube, &self.fixture, &self.graph) {
            (Some(n), None, None) => Ok(GraphChoice::Cube {
                n: *n,
                d: self.dist.unwrap_or(1),
            }),
            (None, Some(spec), None) => Ok(GraphChoice::Fixture(spec.clone())),
            (None, None, Some(path)) => Ok(GraphChoice::File(path.clone())),
            _ => Err("exactly one of --cube, --fixture, --graph is required".to_string()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigenspaces of AD⁻¹ − I in frequency order
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,

        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },

    /// Verify a vertex subset as a graphical design
    Verify {
        #[command(flatten)]
        graph: GraphArgs,

        /// Code spec: hamming:N, lift:…, project:…, dual:…, file:PATH
        /// (cube graphs only)
        #[arg(long, value_name = "SPEC")]
        code: Option<String>,

        /// Design vertices: comma-separated ids or binary words, or a file
        #[arg(long, value_name = "CSV-or-FILE")]
        design: Option<String>,

        /// Residual tolerance for integration verdicts (floating path only)
        #[arg(long, value_name = "X")]
        tolerance: Option<f64>,

        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },

    /// Exhaustively search small subsets for minimum-efficacy designs
    Search {
        #[command(flatten)]
        graph: GraphArgs,

        /// Largest subset size to enumerate
        #[arg(long, value_name = "K")]
        max_size: usize,

        /// Residual tolerance for integration verdicts (floating path only)
        #[arg(long, value_name = "X")]
        tolerance: Option<f64>,

        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },

    /// Recompute an embedded reference table and diff it
    Reproduce {
        /// Target: table1, table2, table3, or efficacies
        target: String,

        /// Output format
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn run(command: &Command) -> Result<(Document, Format), (String, i32)> {
    let usage = |message: String| (message, 2);
    match command {
        Command::Spectrum { graph, format } => {
            let choice = graph.choice().map_err(usage)?;
            let doc = cmd_spectrum(&choice).map_err(|e| (e.to_string(), exit_code(&e)))?;
            Ok((doc, *format))
        }
        Command::Verify {
            graph,
            code,
            design,
            tolerance,
            format,
        } => {
            let choice = graph.choice().map_err(usage)?;
            let doc = cmd_verify(&choice, code.as_deref(), design.as_deref(), *tolerance)
                .map_err(|e| (e.to_string(), exit_code(&e)))?;
            Ok((doc, *format))
        }
        Command::Search {
            graph,
            max_size,
            tolerance,
            format,
        } => {
            let choice = graph.choice().map_err(usage)?;
            let doc = cmd_search(&choice, *max_size, *tolerance)
                .map_err(|e| (e.to_string(), exit_code(&e)))?;
            Ok((doc, *format))
        }
        Command::Reproduce { target, format } => {
            let doc = cmd_reproduce(target).map_err(|e| (e.to_string(), exit_code(&e)))?;
            Ok((doc, *format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((document, format)) => {
            print!("{}", render(&document, format));
            if document.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err((message, code)) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
