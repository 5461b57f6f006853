use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mingreedy::bench::{self, BenchConfig};
use mingreedy::format::{self, parse_vertex_set, serialize_vertex_set, ParseOptions};
use mingreedy::gen::GenSpec;
use mingreedy::{
    evaluate, serialize_digraph, verify_acyclic_selection, EvalOptions, InstanceReport, LoadedInstance, TieRule,
};

#[derive(Parser)]
#[command(
    name = "mingreedy",
    version,
    about = "Min-Greedy acyclic sets and feedback vertex bounds for digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run Min-Greedy and report its size next to both bounds
    Greedy {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Tie::Lowest)]
        tie: Tie,
        /// Seed for `--tie random`
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the exact optimum
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = mingreedy::DEFAULT_SIZE_LIMIT)]
        size_limit: usize,
        /// Write the selected acyclic set (1-based ids) to this file
        #[arg(long)]
        set_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Degree-sum and average-degree bounds only
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Exact minimum feedback vertex set by exhaustive search
    Exact {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = mingreedy::DEFAULT_SIZE_LIMIT)]
        size_limit: usize,
        /// Write an optimal feedback vertex set (1-based ids) to this file
        #[arg(long)]
        set_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Generate an instance
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Output file; standard output if omitted
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a vertex set against a digraph
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Vertex set file: whitespace-separated 1-based ids
        set: PathBuf,
        /// Property whose failure makes the exit code 1
        #[arg(long, value_enum, default_value_t = Expect::Acyclic)]
        expect: Expect,
    },
    /// Run a benchmark suite described by a TOML config
    Bench {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Tsv)]
        emit: Emit,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Digraph file, or `-` for standard input
    file: PathBuf,
    /// Collapse repeated arcs instead of rejecting them
    #[arg(long)]
    dedupe: bool,
    /// Move self-loop vertices into a forced feedback set before solving
    #[arg(long)]
    strip_self_loops: bool,
}

#[derive(Subcommand)]
enum Family {
    CliqueUnion {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Tournament {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Edgeless {
        #[arg(long)]
        n: usize,
    },
}

impl From<Family> for GenSpec {
    fn from(family: Family) -> Self {
        match family {
            Family::CliqueUnion { k, m } => GenSpec::CliqueUnion { k, m },
            Family::Random { n, p, seed } => GenSpec::Random { n, p, seed },
            Family::Cycle { n } => GenSpec::Cycle { n },
            Family::Path { n } => GenSpec::Path { n },
            Family::Tournament { n, seed } => GenSpec::Tournament { n, seed },
            Family::Edgeless { n } => GenSpec::Edgeless { n },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Tie {
    Lowest,
    Highest,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    /// The set induces an acyclic subdigraph
    Acyclic,
    /// Removing the set leaves an acyclic subdigraph
    Fvs,
    /// Report only
    None,
}

/// Failure classes, mapped onto exit codes.
enum Failure {
    /// Exit 2: unreadable input, malformed data, bad parameters.
    Input { kind: &'static str, message: String },
    /// Exit 1: a computed result failed its own verification.
    Verification(Vec<String>),
}

impl Failure {
    fn input(kind: &'static str, message: impl ToString) -> Self {
        Failure::Input {
            kind,
            message: message.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input("io", e)
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))
    }
}

fn load(input: &InputArgs) -> Result<LoadedInstance, Failure> {
    let text = read_text(&input.file)?;
    let options = ParseOptions {
        dedupe: input.dedupe,
        strip_self_loops: input.strip_self_loops,
    };
    format::parse_with(&text, options).map_err(|e| Failure::input(e.kind(), e))
}

fn instance_name(path: &Path) -> String {
    if path.as_os_str() == "-" {
        "stdin".to_string()
    } else {
        path.file_stem()
            .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
    }
}

fn emit_report(report: &InstanceReport, emit: Emit) -> String {
    match emit {
        Emit::Json => format!("{}\n", report.to_json()),
        Emit::Tsv => format!("{}\n{}\n", InstanceReport::tsv_header(), report.to_tsv_row()),
    }
}

fn write_set(path: &Path, loaded: &LoadedInstance, ids: impl Iterator<Item = u32>) -> Result<(), Failure> {
    let original: Vec<u32> = ids.map(|v| loaded.original_ids[v as usize]).collect();
    let set = mingreedy::VertexSet::new(loaded.declared_order, original).expect("remapped ids are in range");
    fs::write(path, serialize_vertex_set(&set))?;
    Ok(())
}

fn run_report(
    input: &InputArgs,
    options: EvalOptions,
    emit: Emit,
    set_out: Option<(&Path, bool)>,
) -> Result<String, Failure> {
    let loaded = load(input)?;
    let eval = evaluate(
        &instance_name(&input.file),
        &loaded.digraph,
        loaded.forced.len(),
        options,
    )
    .map_err(|e| Failure::input("too-large", e))?;
    if !eval.passed() {
        return Err(Failure::Verification(eval.failures));
    }
    if let Some((path, want_fvs)) = set_out {
        if want_fvs {
            // Optimum over the reduced digraph plus the forced vertices.
            let exact = eval.exact.as_ref().expect("exact stage ran");
            let mut ids: Vec<u32> = exact
                .optimal_fvs
                .iter()
                .map(|v| loaded.original_ids[v as usize])
                .collect();
            ids.extend(&loaded.forced);
            let set = mingreedy::VertexSet::new(loaded.declared_order, ids).expect("ids in range");
            fs::write(path, serialize_vertex_set(&set))?;
        } else if let Some(greedy) = &eval.greedy {
            write_set(path, &loaded, greedy.selected().iter().copied())?;
        }
    }
    Ok(emit_report(&eval.report, emit))
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Greedy {
            input,
            tie,
            seed,
            exact,
            size_limit,
            set_out,
            emit,
        } => {
            let tie = match tie {
                Tie::Lowest => TieRule::LowestId,
                Tie::Highest => TieRule::HighestId,
                Tie::Random => TieRule::Random(seed),
            };
            let options = EvalOptions {
                greedy: Some(tie),
                exact: exact.then_some(size_limit),
            };
            run_report(&input, options, emit, set_out.as_deref().map(|p| (p, false)))
        }
        Command::Bounds { input, emit } => run_report(
            &input,
            EvalOptions {
                greedy: None,
                exact: None,
            },
            emit,
            None,
        ),
        Command::Exact {
            input,
            size_limit,
            set_out,
            emit,
        } => {
            let options = EvalOptions {
                greedy: None,
                exact: Some(size_limit),
            };
            run_report(&input, options, emit, set_out.as_deref().map(|p| (p, true)))
        }
        Command::Gen { family, out } => {
            let spec = GenSpec::from(family);
            let digraph = spec.generate().map_err(|e| Failure::input("invalid-param", e))?;
            let text = serialize_digraph(&digraph);
            match out {
                Some(path) => {
                    fs::write(&path, text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Check { input, set, expect } => {
            let loaded = load(&input)?;
            if !loaded.forced.is_empty() {
                return Err(Failure::input(
                    "usage",
                    "check does not support --strip-self-loops on inputs with loops",
                ));
            }
            let d = &loaded.digraph;
            let set = parse_vertex_set(&read_text(&set)?, d.order()).map_err(|e| Failure::input(e.kind(), e))?;
            let acyclic = verify_acyclic_selection(d, &set).expect("ids checked on parse");
            let fvs = d.is_feedback_vertex_set(&set).expect("ids checked on parse");
            let line = serde_json::json!({
                "instance": instance_name(&input.file),
                "n": d.order(),
                "set_size": set.len(),
                "acyclic": acyclic,
                "feedback_vertex_set": fvs,
            })
            .to_string()
                + "\n";
            let failed = match expect {
                Expect::Acyclic => (!acyclic).then_some("set is not acyclic"),
                Expect::Fvs => (!fvs).then_some("set is not a feedback vertex set"),
                Expect::None => None,
            };
            match failed {
                Some(why) => {
                    print!("{line}");
                    Err(Failure::Verification(vec![why.to_string()]))
                }
                None => Ok(line),
            }
        }
        Command::Bench { config, emit } => {
            let config = BenchConfig::parse(&read_text(&config)?).map_err(|e| Failure::input("config", e))?;
            let run = bench::run(&config).map_err(|e| Failure::input("bench", e))?;
            let mut out = String::new();
            match emit {
                Emit::Json => {
                    let doc = serde_json::json!({ "rows": run.rows, "summary": run.summary });
                    out.push_str(&doc.to_string());
                    out.push('\n');
                }
                Emit::Tsv => {
                    out.push_str(&InstanceReport::tsv_header());
                    out.push('\n');
                    for row in &run.rows {
                        out.push_str(&row.to_tsv_row());
                        out.push('\n');
                    }
                    let s = &run.summary;
                    out.push_str(&format!(
                        "# instances={} verification_failures={} greedy_at_bound={} with_exact={} greedy_optimal={} mean_greedy_over_caro_wei={:.6} total_greedy_ms={:.3}\n",
                        s.instances,
                        s.verification_failures,
                        s.greedy_at_bound,
                        s.with_exact,
                        s.greedy_optimal,
                        s.mean_greedy_over_caro_wei,
                        s.total_greedy_ms
                    ));
                }
            }
            if run.failures.is_empty() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Verification(
                    run.failures
                        .into_iter()
                        .map(|(instance, why)| format!("{instance}: {}", why.join("; ")))
                        .collect(),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let first = e.to_string().lines().next().unwrap_or_default().to_string();
            eprintln!("error\tusage\t{}", first.trim_start_matches("error: "));
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input { kind, message }) => {
            eprintln!("error\t{kind}\t{message}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(problems)) => {
            for p in problems {
                eprintln!("error\tverification\t{p}");
            }
            ExitCode::from(1)
        }
    }
}
