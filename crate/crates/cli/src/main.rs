//! `fogm`: command-line front end for graph modification to first-order
//! properties.
//!
//! Exit codes: 0 YES (or success), 1 NO, 2 UNSUPPORTED, 3 and above for
//! usage, I/O, parse and solver errors.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fogm_core::corpus;
use fogm_core::graph::{format_graph, read_graph, write_gadget, GraphFormat};
use fogm_core::reductions::{cross_compose_clique, edge_to_vertex, removal_to_completion};
use fogm_core::solvers::{extract_hitting_family, kernelize_hitting_family, sunflower_bound, KernelOutcome};
use fogm_core::{
    classify, dispatch_with, models, parse, Formula, Graph, ModificationInstance, Outcome, RunReport,
    SolveOptions, Variant,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXIT_NO: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_ERROR: u8 = 3;

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "fogm", version, about = "Graph modification to first-order properties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the prefix class and variable count of a formula.
    Classify {
        /// Formula file, or `corpus:<name>` for a built-in formula.
        formula: String,
    },
    /// Print whether a graph satisfies a formula.
    Check {
        graph: PathBuf,
        formula: String,
        /// Values for the free variables, in declaration order.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<usize>,
    },
    /// Solve a modification problem and print a key=value report.
    Solve {
        /// vertex, removal, completion or editing.
        variant: Variant,
        graph: PathBuf,
        formula: String,
        k: usize,
        /// Fall back to exhaustive search when no algorithm applies.
        #[arg(long)]
        brute_force: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Transform an instance into an equivalent one of another variant.
    Reduce {
        #[command(subcommand)]
        reduction: Reduction,
    },
    /// Print the hitting-set kernel of a vertex-removal instance with a
    /// universal prefix.
    Kernelize {
        graph: PathBuf,
        formula: String,
        k: usize,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
}

#[derive(Subcommand)]
enum Reduction {
    /// Edge removal to vertex removal on the subdivided pendant gadget.
    EdgeToVertex {
        graph: PathBuf,
        formula: String,
        k: usize,
        /// Write `<out>.el` and `<out>.fol` instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Edge removal to edge completion on the complement.
    RemovalToCompletion {
        graph: PathBuf,
        formula: String,
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Generator {
    /// Compose Clique instances on equally many vertices into one
    /// vertex-removal instance.
    CrossClique {
        /// Clique size shared by all instances.
        #[arg(long)]
        k: usize,
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random graph with independent edges.
    Random {
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    // A closed pipe (`fogm ... | head`) is not an error.
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn read_formula(arg: &str) -> Result<Formula> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        let entry = corpus::lookup(name).ok_or_else(|| format!("no corpus formula named `{name}`"))?;
        return Ok(entry.formula());
    }
    let text = fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
    Ok(parse(&text)?)
}

/// Prints the instance as one graph file with the formula and budget in
/// leading comments, or writes `<out>.el` and `<out>.fol`.
fn emit(o: &mut String, graph_text: &str, f: &Formula, k: usize, g: &Graph, out: Option<&Path>) -> Result<()> {
    match out {
        None => {
            writeln!(o, "# formula {f}")?;
            writeln!(o, "# k {k}")?;
            write!(o, "{graph_text}")?;
        }
        Some(prefix) => {
            let graph_path = prefix.with_extension("el");
            let formula_path = prefix.with_extension("fol");
            fs::write(&graph_path, graph_text)?;
            fs::write(&formula_path, format!("{f}\n"))?;
            let mut r = RunReport::new();
            r.push("graph", graph_path.display())
                .push("formula", formula_path.display())
                .push("class", classify(f))
                .push("n", g.vertex_count())
                .push("m", g.edge_count())
                .push("k", k);
            write!(o, "{r}")?;
        }
    }
    Ok(())
}

fn run(command: Command, o: &mut String) -> Result<u8> {
    match command {
        Command::Classify { formula } => {
            let f = read_formula(&formula)?;
            let count = f.variable_count();
            let noun = if count == 1 { "variable" } else { "variables" };
            writeln!(o, "{}, {count} {noun}", classify(&f))?;
            Ok(0)
        }
        Command::Check { graph, formula, assign } => {
            let g = read_graph(&graph)?;
            let f = read_formula(&formula)?;
            writeln!(o, "{}", models(&g, &f, &assign, None)?)?;
            Ok(0)
        }
        Command::Solve {
            variant,
            graph,
            formula,
            k,
            brute_force,
            threads,
        } => {
            let inst = ModificationInstance::new(variant, read_graph(&graph)?, read_formula(&formula)?, k)?;
            let opts = SolveOptions {
                brute_force_fallback: brute_force,
                threads: threads.max(1),
            };
            let outcome = dispatch_with(&inst, &opts)?;
            write!(o, "{}", RunReport::for_outcome(&inst, &outcome))?;
            Ok(match outcome {
                Outcome::Yes(_) => 0,
                Outcome::No { .. } => EXIT_NO,
                Outcome::Unsupported { .. } => EXIT_UNSUPPORTED,
            })
        }
        Command::Reduce { reduction } => {
            match reduction {
                Reduction::EdgeToVertex { graph, formula, k, out } => {
                    let red = edge_to_vertex(&read_graph(&graph)?, &read_formula(&formula)?, k)?;
                    let g = &red.instance.graph;
                    emit(o, &write_gadget(&red.gadget), &red.instance.formula, k, g, out.as_deref())?;
                }
                Reduction::RemovalToCompletion { graph, formula, k, out } => {
                    let inst =
                        ModificationInstance::new(Variant::EdgeRemoval, read_graph(&graph)?, read_formula(&formula)?, k)?;
                    let dual = removal_to_completion(&inst)?;
                    let text = format_graph(&dual.graph, GraphFormat::EdgeList);
                    emit(o, &text, &dual.formula, k, &dual.graph, out.as_deref())?;
                }
            }
            Ok(0)
        }
        Command::Kernelize { graph, formula, k } => {
            let g = read_graph(&graph)?;
            let fam = extract_hitting_family(&g, &read_formula(&formula)?)?;
            let mut r = RunReport::new();
            r.push("family_sets", fam.sets.len())
                .push("bound", sunflower_bound(fam.max_set_size(), k));
            let code = match kernelize_hitting_family(&fam, k) {
                KernelOutcome::No => {
                    r.push("outcome", "NO");
                    EXIT_NO
                }
                KernelOutcome::Kernel(kernel) => {
                    r.push("outcome", "KERNEL").push("kernel_sets", kernel.sets.len());
                    for set in &kernel.sets {
                        let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                        r.push("set", ids.join(" "));
                    }
                    0
                }
            };
            write!(o, "{r}")?;
            Ok(code)
        }
        Command::Gen { generator } => {
            match generator {
                Generator::CrossClique { k, graphs, out } => {
                    let batch = graphs
                        .iter()
                        .map(|p| Ok((read_graph(p)?, k)))
                        .collect::<Result<Vec<_>>>()?;
                    let inst = cross_compose_clique(&batch)?;
                    let text = format_graph(&inst.graph, GraphFormat::EdgeList);
                    emit(o, &text, &inst.formula, inst.k, &inst.graph, out.as_deref())?;
                }
                Generator::Random { n, p, seed } => {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(format!("edge probability {p} is not in [0, 1]").into());
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let g = fogm_core::graph::random_graph(n, p, &mut rng);
                    write!(o, "{}", format_graph(&g, GraphFormat::EdgeList))?;
                }
            }
            Ok(0)
        }
    }
}
