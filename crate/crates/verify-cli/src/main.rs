//! verify: construct the paper's graph families, run graph analysis, and
//! execute check manifests.

mod manifest;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bidihedrant::action;
use bidihedrant::analysis::{automorphism_group, find_biregular_dihedral, normal_quotient};
use bidihedrant::families::orbital_graphs;
use bidihedrant::graph::SimpleGraph;
use bidihedrant::named::load_group;
use bidihedrant::registry::construct_family;
use bidihedrant::{Error, PermutationGroup};

#[derive(Parser)]
#[command(name = "verify", version, about = "graph-family construction and paper-claims verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a graph family from a `family:param=value,...` spec.
    Construct {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Run a check manifest and emit a JSON-lines report.
    Check {
        manifest: PathBuf,
        /// Worker threads (default: VERIFY_JOBS or 1).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the automorphism group of a graph file.
    Aut { graphfile: PathBuf },
    /// Print the orbital graphs of a permutation group.
    Orbitals {
        groupfile: PathBuf,
        /// Also print the suborbits (orbits of the stabilizer of this
        /// 1-based point).
        #[arg(long)]
        point_stabilizer: Option<usize>,
    },
    /// Quotient a graph by the orbits of a normal subgroup.
    Quotient {
        graphfile: PathBuf,
        groupfile: PathBuf,
        normalfile: PathBuf,
    },
    /// Search for bi-regular dihedral subgroups of Aut(Γ) within a group.
    SearchBidihedral {
        graphfile: PathBuf,
        groupfile: PathBuf,
    },
}

/// Usage-level errors exit 2; runtime failures exit 1.
enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Parse(_) | Error::Precondition(_) => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Graph files: a single graph6 line, or an edge list with one `u v` pair
/// (0-based) per line.
fn load_graph(path: &PathBuf) -> Result<SimpleGraph, CliError> {
    let text = read_file(path)?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let looks_like_edges = !lines.is_empty()
        && lines.iter().all(|l| {
            let parts: Vec<&str> = l.split_whitespace().collect();
            parts.len() == 2 && parts.iter().all(|p| p.parse::<usize>().is_ok())
        });
    if looks_like_edges {
        let mut edges = Vec::new();
        let mut n = 0;
        for l in &lines {
            let mut it = l.split_whitespace().map(|p| p.parse::<usize>().unwrap());
            let (u, v) = (it.next().unwrap(), it.next().unwrap());
            n = n.max(u + 1).max(v + 1);
            edges.push((u, v));
        }
        return SimpleGraph::from_edges(n, &edges).map_err(CliError::from);
    }
    match lines.first() {
        Some(line) => SimpleGraph::from_graph6(line.trim()).map_err(CliError::from),
        None => Err(CliError::Usage(format!("{} is empty", path.display()))),
    }
}

fn load_group_file(path: &PathBuf) -> Result<PermutationGroup, CliError> {
    load_group(&read_file(path)?).map_err(CliError::from)
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn render_graph(g: &SimpleGraph, format: Format) -> String {
    match format {
        Format::Graph6 => format!("{}\n", g.to_graph6()),
        Format::Edgelist => {
            let mut s = String::new();
            for (u, v) in g.edges() {
                s.push_str(&format!("{u} {v}\n"));
            }
            s
        }
    }
}

fn print_group(label: &str, group: &PermutationGroup) {
    println!("{label} order {}", group.order());
    for g in group.generators() {
        println!("  {g}");
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Construct { spec, out, format } => {
            let cert = construct_family(&spec)?;
            emit(render_graph(&cert.graph, format), &out)?;
            eprintln!(
                "{}: {} vertices, {} edges, certified by a group of order {}",
                cert.provenance,
                cert.graph.n(),
                cert.graph.edge_count(),
                cert.group.order()
            );
            Ok(true)
        }
        Command::Check { manifest, jobs, out } => {
            let text = read_file(&manifest)?;
            let parsed = manifest::CheckManifest::parse(&text).map_err(CliError::Usage)?;
            let jobs = jobs
                .or_else(|| {
                    std::env::var("VERIFY_JOBS").ok().and_then(|v| v.parse().ok())
                })
                .unwrap_or(1);
            let (lines, summary) = manifest::run_manifest(&parsed, jobs);
            let mut report = String::new();
            for l in &lines {
                report.push_str(&serde_json::to_string(l).unwrap());
                report.push('\n');
            }
            report.push_str(&format!(
                "{}\n",
                serde_json::to_string(&serde_json::json!({ "summary": summary })).unwrap()
            ));
            emit(report, &out)?;
            Ok(summary.fail == 0)
        }
        Command::Aut { graphfile } => {
            let g = load_graph(&graphfile)?;
            let aut = automorphism_group(&g)?;
            print_group("automorphism group", &aut);
            Ok(true)
        }
        Command::Orbitals {
            groupfile,
            point_stabilizer,
        } => {
            let group = load_group_file(&groupfile)?;
            if let Some(p) = point_stabilizer {
                let point = p
                    .checked_sub(1)
                    .filter(|&x| x < group.degree())
                    .ok_or_else(|| {
                        CliError::Usage(format!("point {p} out of range (1-based)"))
                    })?;
                let stab = group.point_stabilizer(point)?;
                let mut suborbits: Vec<usize> =
                    action::orbits(&stab).iter().map(|o| o.len()).collect();
                suborbits.sort_unstable();
                println!(
                    "stabilizer of point {p}: order {}, suborbit lengths {:?}",
                    stab.order(),
                    suborbits
                );
            }
            for (i, og) in orbital_graphs(&group)?.into_iter().enumerate() {
                println!(
                    "orbital {}: self_paired={} connected={} valency={:?} graph6={}",
                    i + 1,
                    og.self_paired,
                    og.connected,
                    og.certified.graph.valency(),
                    og.certified.graph.to_graph6()
                );
            }
            Ok(true)
        }
        Command::Quotient {
            graphfile,
            groupfile,
            normalfile,
        } => {
            let g = load_graph(&graphfile)?;
            let group = load_group_file(&groupfile)?;
            let normal = load_group_file(&normalfile)?;
            let q = normal_quotient(&g, &group, &normal)?;
            println!(
                "blocks: {} of size {}",
                q.blocks.num_blocks(),
                q.blocks.block_size()
            );
            match q.r {
                Some(r) => println!("normal r-cover with r = {r}"),
                None => {
                    println!("not a cover; multiplicity table (vertex, block, count):");
                    for (v, b, c) in &q.multiplicity_table {
                        println!("  {v} {b} {c}");
                    }
                }
            }
            println!("internal edges skipped: {}", q.has_internal_edges);
            println!("quotient graph6: {}", q.quotient.to_graph6());
            Ok(true)
        }
        Command::SearchBidihedral {
            graphfile,
            groupfile,
        } => {
            let g = load_graph(&graphfile)?;
            let group = load_group_file(&groupfile)?;
            let found = find_biregular_dihedral(&g, &group)?;
            println!("found {} bi-regular dihedral subgroup(s) up to conjugacy", found.len());
            for (i, h) in found.iter().enumerate() {
                print_group(&format!("subgroup {}", i + 1), h);
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
