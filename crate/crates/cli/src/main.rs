use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gdwl::biconnect::{
    bce_forest_forms, bce_tree, bcv_forest_forms, bcv_tree, biconnectivity_report, CanonicalMode,
    TreeCanonicalForm,
};
use gdwl::distances::{rd_matrix, spd_matrix, Distance, DistanceMatrix};
use gdwl::generators::Family;
use gdwl::graph::{encode_graph6, parse_any};
use gdwl::harness::{run_suite, CheckReport, RunOptions, Suite, Verdict};
use gdwl::refine::{distinguishable, Algorithm, InterningContext};
use gdwl::Graph;

#[derive(Parser)]
#[command(
    name = "gdwl",
    version,
    about = "Weisfeiler-Lehman refinement and graph biconnectivity toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph: example1 M K, example2 M, named NAME, path N, cycle N,
    /// complete N, star N, tree N SEED, gnp N P SEED, regular-cuts D BLOCKS SIZE SEED
    Gen {
        family: String,
        params: Vec<String>,
        /// Which graph of a paired family to emit
        #[arg(long)]
        member: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cut vertices, cut edges, components and block cut trees
    Biconnect {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// All-pairs distance matrix
    Distances {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        json: bool,
    },
    /// Stable colorings of one or more graphs in a shared color space
    Refine {
        #[arg(long)]
        algo: String,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Whether an algorithm separates two graphs
    Distinguish {
        #[arg(long)]
        algo: String,
        file1: PathBuf,
        file2: PathBuf,
    },
    /// Run the verification suites
    Check {
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        /// Random graphs in the standard corpus
        #[arg(long, default_value_t = 200)]
        seeds: usize,
        /// Random trees for the resistance checks
        #[arg(long, default_value_t = 50)]
        trees: usize,
        #[arg(long)]
        json: bool,
        /// Record elapsed_ms (makes output run-dependent)
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Spd,
    Rd,
}

/// Failure of a command that is not a check verdict.
struct Usage(String);

impl<E: Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    parse_any(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Usage> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Usage> {
    match command {
        Command::Gen {
            family,
            params,
            member,
            format,
            output,
        } => gen(&family, &params, member, format, output.as_deref())?,
        Command::Biconnect { file, json } => biconnect(&read_graph(&file)?, json)?,
        Command::Distances { file, kind, json } => distances(&read_graph(&file)?, kind, json)?,
        Command::Refine { algo, files, json } => refine(&algo, &files, json)?,
        Command::Distinguish { algo, file1, file2 } => {
            let algo: Algorithm = algo.parse()?;
            let verdict = distinguishable(&read_graph(&file1)?, &read_graph(&file2)?, &algo)?;
            println!(
                "{}",
                if verdict {
                    "distinguishable"
                } else {
                    "indistinguishable"
                }
            );
        }
        Command::Check {
            suite,
            seeds,
            trees,
            json,
            timing,
        } => {
            return check(
                suite.parse()?,
                RunOptions {
                    seeds,
                    trees,
                    timing,
                },
                json,
            )
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn gen(
    family: &str,
    params: &[String],
    member: Option<usize>,
    format: Format,
    output: Option<&Path>,
) -> Result<(), Usage> {
    let family = Family::parse(family, params)?;
    let graphs = family.build()?;
    let g = match (graphs.len(), member) {
        (1, None | Some(1)) => &graphs[0],
        (2, Some(i @ (1 | 2))) => &graphs[i - 1],
        (2, None) => return Err(Usage(format!("{family} is a pair; choose --member 1 or 2"))),
        (_, Some(i)) => return Err(Usage(format!("{family} has no member {i}"))),
        _ => unreachable!("families build one or two graphs"),
    };
    let text = match format {
        Format::Edgelist => g.to_edge_list(),
        Format::Graph6 => format!("{}\n", encode_graph6(g).trim_end()),
    };
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn forms(list: &[TreeCanonicalForm]) -> Vec<&str> {
    list.iter().map(|f| f.0.as_str()).collect()
}

fn biconnect(g: &Graph, json: bool) -> Result<(), Usage> {
    let report = biconnectivity_report(g);
    let bcv = forms(&bcv_forest_forms(g, CanonicalMode::KindAndSize)).join(" | ");
    let bce = forms(&bce_forest_forms(g, CanonicalMode::KindAndSize)).join(" | ");
    if json {
        let connected = g.is_connected();
        return print_json(&json!({
            "cut_vertices": report.cut_vertices,
            "cut_edges": report.cut_edges,
            "vertex_bccs": report.vertex_bccs,
            "edge_bccs": report.edge_bccs.classes(),
            "bcv_tree": if connected { serde_json::to_value(bcv_tree(g)?)? } else { Value::Null },
            "bce_tree": if connected { serde_json::to_value(bce_tree(g)?)? } else { Value::Null },
            "bcv_forms": forms(&bcv_forest_forms(g, CanonicalMode::KindAndSize)),
            "bce_forms": forms(&bce_forest_forms(g, CanonicalMode::KindAndSize)),
            "bcv_forms_kind_only": forms(&bcv_forest_forms(g, CanonicalMode::KindOnly)),
            "bce_forms_kind_only": forms(&bce_forest_forms(g, CanonicalMode::KindOnly)),
        }));
    }
    let join = |v: Vec<String>| v.join(" ");
    println!(
        "cut vertices: {}",
        join(report.cut_vertices.iter().map(usize::to_string).collect())
    );
    println!(
        "cut edges: {}",
        join(
            report
                .cut_edges
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .collect()
        )
    );
    let classes = |c: &[Vec<usize>]| {
        c.iter()
            .map(|m| {
                format!(
                    "{{{}}}",
                    m.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!(
        "vertex-biconnected components: {}",
        classes(&report.vertex_bccs)
    );
    println!(
        "edge-biconnected classes: {}",
        classes(report.edge_bccs.classes())
    );
    println!("bcv tree: {bcv}");
    println!("bce tree: {bce}");
    Ok(())
}

fn matrix_rows<T: Display>(
    m: &DistanceMatrix<T>,
    cell: impl Fn(&Distance<T>) -> Value,
) -> Vec<Vec<Value>> {
    (0..m.size())
        .map(|u| m.row(u).iter().map(&cell).collect())
        .collect()
}

fn print_matrix<T: Display>(m: &DistanceMatrix<T>) {
    for u in 0..m.size() {
        let row: Vec<String> = m.row(u).iter().map(|d| d.to_string()).collect();
        println!("{}", row.join(" "));
    }
}

fn distances(g: &Graph, kind: Kind, json: bool) -> Result<(), Usage> {
    match kind {
        Kind::Spd => {
            let m = spd_matrix(g);
            if json {
                let rows = matrix_rows(&m, |d| d.finite().map_or(Value::Null, |v| json!(v)));
                return print_json(&json!({ "kind": "spd", "n": m.size(), "matrix": rows }));
            }
            print_matrix(&m);
        }
        Kind::Rd => {
            let m = rd_matrix(g)?;
            if json {
                let rows = matrix_rows(&m, |d| {
                    d.finite().map_or(Value::Null, |v| json!(v.to_string()))
                });
                return print_json(&json!({ "kind": "rd", "n": m.size(), "matrix": rows }));
            }
            print_matrix(&m);
        }
    }
    Ok(())
}

fn refine(algo: &str, files: &[PathBuf], json: bool) -> Result<(), Usage> {
    let algo: Algorithm = algo.parse()?;
    let graphs = files
        .iter()
        .map(|f| read_graph(f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ctx = InterningContext::new();
    let run = algo.refine(&graphs, &mut ctx)?;
    if json {
        let entries: Vec<Value> = files
            .iter()
            .zip(&run.colorings)
            .zip(&run.representations)
            .map(|((file, c), rep)| {
                json!({
                    "file": file.display().to_string(),
                    "colors": c.colors,
                    "classes": c.partition().len(),
                    "rounds": c.rounds,
                    "representation": rep.colors,
                })
            })
            .collect();
        return print_json(&json!({ "algorithm": algo.to_string(), "graphs": entries }));
    }
    for (file, c) in files.iter().zip(&run.colorings) {
        let colors: Vec<String> = c.colors.iter().map(|c| c.0.to_string()).collect();
        println!(
            "{}: {} classes after {} rounds: {}",
            file.display(),
            c.partition().len(),
            c.rounds,
            colors.join(" ")
        );
    }
    Ok(())
}

fn check(suite: Suite, options: RunOptions, json: bool) -> Result<ExitCode, Usage> {
    let reports = run_suite(suite, options)?;
    if json {
        print_json(&reports)?;
    } else {
        for r in &reports {
            print_report(r);
        }
    }
    let failed = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .count();
    if !json {
        println!("{} checks, {} failed", reports.len(), failed);
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_report(r: &CheckReport) {
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let time = if r.elapsed_ms > 0 {
        format!(" {} ms", r.elapsed_ms)
    } else {
        String::new()
    };
    println!(
        "{verdict} {} ({} violations){time}",
        r.check_id,
        r.violations.len()
    );
    for v in r.violations.iter().take(5) {
        println!(
            "    {}: expected {}, observed {}",
            v.graphs.join(" vs "),
            v.expected,
            v.observed
        );
    }
    if let Some(table) = &r.table {
        println!(
            "    {:<22} {:<15} {:<15} {:<15} {:<15}",
            "algorithm", "cut_vertex", "cut_edge", "bcv_tree", "bce_tree"
        );
        for row in &table.rows {
            let cell = |c: &gdwl::harness::Cell| match c {
                gdwl::harness::Cell::Expressive => "yes",
                gdwl::harness::Cell::NotExpressive => "no",
            };
            println!(
                "    {:<22} {:<15} {:<15} {:<15} {:<15}",
                row.algorithm,
                cell(&row.cut_vertex),
                cell(&row.cut_edge),
                cell(&row.bcv_tree),
                cell(&row.bce_tree)
            );
        }
    }
    for note in &r.notes {
        println!("    note: {note}");
    }
}
