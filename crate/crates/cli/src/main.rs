//! `xgraph`: clique complexes, forms, derivatives, Betti numbers and
//! operator verification from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error. Every
//! error is reported as one JSON object `{code, message, context}` on stderr.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use exterior_graph::calculus::{exterior_derivative, expand_reconstruct, wedge};
use exterior_graph::cohomology;
use exterior_graph::io::{form_to_json, FormJson, OperatorTable};
use exterior_graph::uniqueness::{check_axioms, TableOperator};
use exterior_graph::{selftest, CliqueComplex, Graph};

#[derive(Parser)]
#[command(name = "xgraph", version, about = "Exact exterior calculus on clique complexes of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edges,
    Json,
}

#[derive(clap::Args)]
struct GraphArgs {
    /// Graph file (`.edges` or `.json`), or `-` for stdin.
    #[arg(long)]
    graph: PathBuf,
    /// Override format detection by extension.
    #[arg(long, value_enum)]
    format: Option<GraphFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// List clique counts per level, optionally with the cliques.
    Cliques {
        #[command(flatten)]
        graph: GraphArgs,
        /// Largest clique cardinality to enumerate (default: all).
        #[arg(long)]
        max_card: Option<usize>,
        /// Print every clique, one per line.
        #[arg(long)]
        tuples: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exterior derivative of a form.
    D {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        form: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// Accepted for uniformity; form output is always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Wedge product of two forms.
    Wedge {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Rebuild a form from its expansion over products of dχ^v.
    Expand {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        form: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers of the clique complex over the rationals.
    Betti {
        #[command(flatten)]
        graph: GraphArgs,
        /// Write each coboundary matrix as `D<k>.txt` triplets into this directory.
        #[arg(long)]
        emit_matrices: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check an operator table against the derivation axioms and d.
    VerifyOperator {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        operator: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the JSON report.
        #[arg(long, default_value = "verify-operator-report.json")]
        report: PathBuf,
        /// Print the JSON report instead of the text summary.
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in property suite.
    Selftest {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: String,
    message: String,
    context: String,
    exit: u8,
}

impl Failure {
    fn new(code: &str, message: impl Into<String>, context: impl Into<String>, exit: u8) -> Self {
        Failure {
            code: code.to_owned(),
            message: message.into(),
            context: context.into(),
            exit,
        }
    }

    fn emit(&self) -> ExitCode {
        let obj = serde_json::json!({
            "code": self.code,
            "message": self.message,
            "context": self.context,
        });
        eprintln!("{obj}");
        ExitCode::from(self.exit)
    }
}

fn core_err(context: impl Into<String>) -> impl FnOnce(exterior_graph::Error) -> Failure {
    let context = context.into();
    move |e| Failure::new(e.code(), e.to_string(), context, 2)
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let io_fail = |e: io::Error| Failure::new("io", e.to_string(), path.display().to_string(), 2);
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_fail)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_fail)
    }
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    let io_fail = |e: io::Error| Failure::new("io", e.to_string(), path.display().to_string(), 2);
    if path == Path::new("-") {
        io::stdout().write_all(text.as_bytes()).map_err(io_fail)
    } else {
        fs::write(path, text).map_err(io_fail)
    }
}

fn load_graph(args: &GraphArgs) -> Result<Arc<Graph>, Failure> {
    let text = read_input(&args.graph)?;
    let format = args.format.unwrap_or_else(|| {
        match args.graph.extension().and_then(|e| e.to_str()) {
            Some("json") => GraphFormat::Json,
            _ => GraphFormat::Edges,
        }
    });
    let ctx = args.graph.display().to_string();
    let g = match format {
        GraphFormat::Edges => Graph::parse_edge_list(&text),
        GraphFormat::Json => Graph::from_json(&text),
    }
    .map_err(core_err(ctx))?;
    Ok(Arc::new(g))
}

fn load_form_json(path: &Path) -> Result<FormJson, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::new("json", e.to_string(), path.display().to_string(), 2))
}

fn complex(g: Arc<Graph>, min_card: usize) -> Result<Arc<CliqueComplex>, Failure> {
    CliqueComplex::build_at_least(g, min_card).map_err(core_err("clique complex"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cliques {
            graph,
            max_card,
            tuples,
            json,
        } => {
            let g = load_graph(&graph)?;
            let cx = match max_card {
                Some(m) => CliqueComplex::build(g, m).map_err(core_err("--max-card"))?,
                None => CliqueComplex::build(Arc::clone(&g), exterior_graph::clique::clique_number(&g).max(1))
                    .map_err(core_err("clique complex"))?,
            };
            let label = |c: &exterior_graph::Clique| -> Vec<String> {
                c.vertices().iter().map(|&v| cx.graph().label(v).to_owned()).collect()
            };
            let mut out = String::new();
            if json {
                let levels: Vec<_> = (1..=cx.max_card())
                    .map(|k| {
                        let mut obj = serde_json::json!({ "card": k, "count": cx.level(k).len() });
                        if tuples {
                            obj["cliques"] = cx.level(k).iter().map(label).collect();
                        }
                        obj
                    })
                    .collect();
                out = serde_json::json!({ "levels": levels }).to_string();
                out.push('\n');
            } else {
                for k in 1..=cx.max_card() {
                    out.push_str(&format!("level {k}: {}\n", cx.level(k).len()));
                    if tuples {
                        for c in cx.level(k) {
                            out.push_str(&label(c).join(" "));
                            out.push('\n');
                        }
                    }
                }
            }
            write_output(Path::new("-"), &out)
        }
        Command::D { graph, form, out, .. } => {
            let g = load_graph(&graph)?;
            let raw = load_form_json(&form)?;
            let cx = complex(g, raw.degree + 2)?;
            let ctx = form.display().to_string();
            let alpha = raw.to_form(&cx).map_err(core_err(ctx.clone()))?;
            let da = exterior_derivative(&alpha).map_err(core_err(ctx))?;
            write_output(&out, &(form_to_json(&da) + "\n"))
        }
        Command::Wedge {
            graph, left, right, out, ..
        } => {
            let g = load_graph(&graph)?;
            let a = load_form_json(&left)?;
            let b = load_form_json(&right)?;
            let cx = complex(g, a.degree + b.degree + 1)?;
            let fa = a.to_form(&cx).map_err(core_err(left.display().to_string()))?;
            let fb = b.to_form(&cx).map_err(core_err(right.display().to_string()))?;
            let w = wedge(&fa, &fb).map_err(core_err("wedge"))?;
            write_output(&out, &(form_to_json(&w) + "\n"))
        }
        Command::Expand { graph, form, out, .. } => {
            let g = load_graph(&graph)?;
            let raw = load_form_json(&form)?;
            let cx = complex(g, raw.degree + 1)?;
            let ctx = form.display().to_string();
            let alpha = raw.to_form(&cx).map_err(core_err(ctx.clone()))?;
            let e = expand_reconstruct(&alpha).map_err(core_err(ctx))?;
            write_output(&out, &(form_to_json(&e) + "\n"))
        }
        Command::Betti {
            graph,
            emit_matrices,
            json,
        } => {
            let g = load_graph(&graph)?;
            let cx = CliqueComplex::build_full(g).map_err(core_err("clique complex"))?;
            let b = cohomology::betti(&cx).map_err(core_err("betti"))?;
            if let Some(dir) = emit_matrices {
                fs::create_dir_all(&dir)
                    .map_err(|e| Failure::new("io", e.to_string(), dir.display().to_string(), 2))?;
                for m in cohomology::coboundary_matrices(&cx).map_err(core_err("coboundary"))? {
                    let path = dir.join(format!("D{}.txt", m.degree));
                    write_output(&path, &m.to_triplet_text())?;
                }
            }
            let text = if json {
                serde_json::json!({ "betti": b }).to_string()
            } else {
                b.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
            };
            write_output(Path::new("-"), &(text + "\n"))
        }
        Command::VerifyOperator {
            graph,
            operator,
            trials,
            seed,
            report,
            json,
        } => {
            let g = load_graph(&graph)?;
            let cx = CliqueComplex::build_at_least(g, 3).map_err(core_err("clique complex"))?;
            let text = read_input(&operator)?;
            let ctx = operator.display().to_string();
            let table = OperatorTable::from_json(&text, &cx).map_err(core_err(ctx.clone()))?;
            let op = TableOperator::new(ctx, table);
            let result = check_axioms(&op, &cx, trials, seed).map_err(core_err("verify-operator"))?;
            let report_json = result.to_json() + "\n";
            write_output(&report, &report_json)?;
            if json {
                write_output(Path::new("-"), &report_json)?;
            } else {
                write_output(Path::new("-"), &format!("{result}\n"))?;
            }
            if result.passed() {
                Ok(())
            } else {
                Err(Failure::new(
                    "check_failed",
                    "operator failed at least one check",
                    report.display().to_string(),
                    1,
                ))
            }
        }
        Command::Selftest {
            trials,
            seed,
            report,
            json,
        } => {
            let r = selftest::run(trials, seed).map_err(core_err("selftest"))?;
            let report_json = r.to_json() + "\n";
            if let Some(path) = report {
                write_output(&path, &report_json)?;
            }
            write_output(Path::new("-"), &if json { report_json } else { r.table() })?;
            if r.passed {
                Ok(())
            } else {
                Err(Failure::new("check_failed", "self-test failed", "selftest", 1))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let message = e.kind().to_string();
            let context = e.to_string().lines().next().unwrap_or_default().to_owned();
            return Failure::new("usage", message, context, 2).emit();
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.emit(),
    }
}
