//! Command-line surface over the begraph library.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 for a positive
//! result, 1 for a negative one (not a basis exchange graph, not isomorphic,
//! a failed condition report), 2 for unreadable or malformed input. All
//! output is deterministic.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use begraph::geometry::{facet_enumeration, parse_points};
use begraph::graph::{is_isomorphic, parse_graph, write_graph, Graph};
use begraph::linegraph::RootRejection;
use begraph::matroid::{parse_bases, write_bases, Matroid};
use begraph::reconstruct::{
    reconstruct_seeded, verify_maurer, MaurerVerdict, ReconstructionOutcome,
};

#[derive(Parser)]
#[command(
    name = "begraph",
    about = "Basis exchange graphs: reconstruction, matroid graphs, polytope reports",
    version
)]
struct Cli {
    /// File format of inputs and outputs; only the shared text formats exist.
    #[arg(long, global = true, default_value = "text")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph file is a basis exchange graph; print the
    /// reconstructed bases, or FALSE with a reason and witness.
    Reconstruct {
        graph: PathBuf,
        /// Start the labelling at this node instead of node 0.
        #[arg(long)]
        seed_node: Option<usize>,
    },
    /// Print the basis exchange graph of a bases file.
    Beg { bases: PathBuf },
    /// Facet count, cell census, graph and dual graph of a points file.
    PolytopeReport { points: PathBuf },
    /// Test two graph files for isomorphism.
    Iso { first: PathBuf, second: PathBuf },
    /// Report Maurer's interval, positioning and link conditions for a graph.
    VerifyMaurer { graph: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.format != "text" {
        eprintln!("error: unknown format `{}` (only `text` is supported)", cli.format);
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok((code, output)) => {
            // tolerate a closed pipe, fail loudly on anything else
            use std::io::Write as _;
            if let Err(e) = std::io::stdout().write_all(output.as_bytes()) {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::from(code);
                }
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(u8, String)> {
    match command {
        Command::Reconstruct { graph, seed_node } => cmd_reconstruct(&graph, seed_node),
        Command::Beg { bases } => cmd_beg(&bases),
        Command::PolytopeReport { points } => cmd_polytope_report(&points),
        Command::Iso { first, second } => cmd_iso(&first, &second),
        Command::VerifyMaurer { graph } => cmd_verify_maurer(&graph),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn cmd_reconstruct(path: &Path, seed_node: Option<usize>) -> Result<(u8, String)> {
    let graph = load_graph(path)?;
    let seed = seed_node.unwrap_or(0);
    if graph.node_count() > 0 && seed >= graph.node_count() {
        return Err(anyhow!(
            "seed node {seed} out of range for a graph on {} nodes",
            graph.node_count()
        ));
    }
    if graph.node_count() == 0 {
        return Ok((1, "FALSE NotConnected components\n".to_string()));
    }
    match reconstruct_seeded(&graph, seed) {
        ReconstructionOutcome::Success { matroid, .. } => Ok((0, write_bases(&matroid))),
        ReconstructionOutcome::NotBeg(rejection) => Ok((
            1,
            format!(
                "FALSE {} {}\n",
                rejection.reason_code(),
                rejection.witness_description()
            ),
        )),
    }
}

fn cmd_beg(path: &Path) -> Result<(u8, String)> {
    let (ground, bases) =
        parse_bases(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let matroid = Matroid::new(ground, bases).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let (graph, _) = matroid.basis_exchange_graph();
    Ok((0, write_graph(&graph)))
}

fn cmd_polytope_report(path: &Path) -> Result<(u8, String)> {
    let points = parse_points(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let polytope = facet_enumeration(&points).map_err(|e| anyhow!("{}: {e}", path.display()))?;

    let mut out = format!("dim {}, {} facets", polytope.dim(), polytope.facets().len());
    for (cell, count) in polytope.census_counts() {
        let _ = write!(out, ", {count} {cell}");
    }
    out.push('\n');
    out.push_str("# graph\n");
    out.push_str(&write_graph(&polytope.graph()));
    if polytope.dim() >= 2 {
        out.push_str("# dual graph\n");
        out.push_str(&write_graph(&polytope.dual_graph()));
    }
    Ok((0, out))
}

fn cmd_iso(first: &Path, second: &Path) -> Result<(u8, String)> {
    let a = load_graph(first)?;
    let b = load_graph(second)?;
    match is_isomorphic(&a, &b) {
        Some(map) => {
            let pairs: Vec<String> = map
                .iter()
                .enumerate()
                .map(|(u, &v)| format!("{u}:{v}"))
                .collect();
            Ok((0, format!("ISOMORPHIC {}\n", pairs.join(" "))))
        }
        None => Ok((1, "NOT_ISOMORPHIC\n".to_string())),
    }
}

fn cmd_verify_maurer(path: &Path) -> Result<(u8, String)> {
    let graph = load_graph(path)?;
    match verify_maurer(&graph) {
        MaurerVerdict::NotConnected { component_reps } => {
            let reps: Vec<String> = component_reps.iter().map(usize::to_string).collect();
            Ok((1, format!("NOT_CONNECTED components {}\n", reps.join(" "))))
        }
        MaurerVerdict::Report(report) => {
            let mut out = String::new();
            match report.interval_witness {
                None => {
                    let _ = writeln!(out, "interval {}", report.interval);
                }
                Some((u, w)) => {
                    let _ = writeln!(out, "interval false pair {u} {w}");
                }
            }
            match report.positioning_witness {
                None => {
                    let _ = writeln!(out, "positioning {}", report.positioning);
                }
                Some((node, [a, c, d, e])) => {
                    let _ = writeln!(out, "positioning false node {node} square {a} {c} {d} {e}");
                }
            }
            match &report.link_witness {
                None => {
                    let _ = writeln!(out, "link {} node {}", report.link, report.link_node);
                }
                Some(RootRejection::NotLineGraph { witness }) => {
                    let nodes: Vec<String> = witness.iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "link false NotLineGraph nodes {}", nodes.join(" "));
                }
                Some(RootRejection::RootNotBipartite { odd_cycle }) => {
                    let cycle: Vec<String> = odd_cycle.iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "link false RootNotBipartite cycle {}", cycle.join(" "));
                }
            }
            Ok((if report.all_hold() { 0 } else { 1 }, out))
        }
    }
}
