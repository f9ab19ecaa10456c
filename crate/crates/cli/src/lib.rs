//! The `globular` command line, as a function from arguments to output.
//!
//! Exit codes: 0 success or EQUAL, 1 law failures, DISTINCT or an invalid
//! presentation, 2 UNDECIDED, 64 usage error, 65 malformed input, 66
//! unreadable file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use globular::algebra::{check_algebra, check_involutive_category};
use globular::congruence::{canonical, eq, DEFAULT_BOUND};
use globular::contraction::contract;
use globular::models::{self, Graph, Instance};
use globular::monad::check_monad_laws;
use globular::oracle::oracle_closure;
use globular::syntax::parse_term_with_bound;
use globular::{Error, GlobularSet, Magma, Report, Term};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;

#[derive(Parser, Debug)]
#[command(
    name = "globular",
    version,
    about = "Terms, equality and law checks for truncated involutive globular categories"
)]
struct Cli {
    /// Orbit bound for equality decisions.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    /// Write standard output to this file instead.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a presentation loads and is globular.
    Validate { presentation: PathBuf },
    /// Print the canonical representative of a term.
    Normalize {
        #[arg(short = 'p', long)]
        presentation: PathBuf,
        term: String,
    },
    /// Decide equality of two terms: EQUAL, DISTINCT or UNDECIDED.
    Eq {
        #[arg(short = 'p', long)]
        presentation: PathBuf,
        lhs: String,
        rhs: String,
    },
    /// List all terms of one dimension within the bounds.
    Enumerate {
        #[arg(short = 'p', long)]
        presentation: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        gamma: usize,
    },
    /// Build the contraction cell between two parallel equal terms.
    Contract {
        #[arg(short = 'p', long)]
        presentation: PathBuf,
        x: String,
        y: String,
    },
    /// Dump the congruence classes of all terms up to a dimension.
    Oracle {
        #[arg(short = 'p', long)]
        presentation: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        gamma: usize,
    },
    /// Check the category axioms and algebra laws of a model.
    CheckLaws {
        /// `cyclic:<n>` or `edgepath:<graph file>`.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the monad laws on seeded samples.
    MonadCheck {
        #[arg(short = 'p', long)]
        presentation: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a run produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Output { code, stdout, stderr: String::new() }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Output { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded(_) => EXIT_UNDECIDED,
        Error::Domain(_) => EXIT_FAILURE,
        _ => EXIT_DATA,
    }
}

fn read(path: &Path) -> Result<String, Output> {
    std::fs::read_to_string(path).map_err(|e| Output::error(EXIT_NO_INPUT, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Magma, Output> {
    let text = read(path)?;
    let g = globular::load_presentation(&text).map_err(|e| Output::error(EXIT_DATA, e))?;
    Ok(Magma::new(g))
}

fn term(m: &Magma, text: &str, bound: usize) -> Result<Term, Output> {
    parse_term_with_bound(m, text, bound).map_err(|e| Output::error(code_for(&e), e))
}

fn report_output(report: &Report, header: &str) -> Output {
    let code = if report.is_clean() { EXIT_OK } else { EXIT_FAILURE };
    Output::with_code(code, format!("{header}{report}"))
}

fn validate(path: &Path) -> Result<Output, Output> {
    let text = read(path)?;
    let g = GlobularSet::parse_structure(&text).map_err(|e| Output::error(EXIT_DATA, e))?;
    let violations = g.validate_globularity();
    if violations.is_empty() {
        let counts: Vec<String> = (0..=g.truncation()).map(|d| g.cell_count(d).to_string()).collect();
        return Ok(Output::ok(format!("VALID truncation {} cells {}\n", g.truncation(), counts.join(" "))));
    }
    let mut out = String::new();
    for v in &violations {
        writeln!(out, "VIOLATION {v}").unwrap();
    }
    Ok(Output::with_code(EXIT_FAILURE, out))
}

fn model(model_arg: &str, window: usize) -> Result<Instance, Output> {
    let usage = || Output::error(EXIT_USAGE, format!("model `{model_arg}` is not cyclic:<n> or edgepath:<file>"));
    let (kind, arg) = model_arg.split_once(':').ok_or_else(usage)?;
    match kind {
        "cyclic" => {
            let n: usize = arg.parse().map_err(|_| usage())?;
            models::cyclic_instance(n).map_err(|e| Output::error(EXIT_DATA, e))
        }
        "edgepath" => {
            let g = Graph::parse(&read(Path::new(arg))?).map_err(|e| Output::error(EXIT_DATA, e))?;
            models::edge_path_instance(&g, window).map_err(|e| Output::error(EXIT_DATA, e))
        }
        _ => Err(usage()),
    }
}

fn execute(cli: &Cli) -> Result<Output, Output> {
    let bound = cli.bound;
    match &cli.command {
        Command::Validate { presentation } => validate(presentation),
        Command::Normalize { presentation, term: text } => {
            let m = load(presentation)?;
            let c = canonical(&term(&m, text, bound)?, bound);
            let flag = if c.exhausted { "exhausted" } else { "not-exhausted" };
            Ok(Output::ok(format!("{}\n{flag}\n", c.rep)))
        }
        Command::Eq { presentation, lhs, rhs } => {
            let m = load(presentation)?;
            let (a, b) = (term(&m, lhs, bound)?, term(&m, rhs, bound)?);
            match eq(&a, &b, bound) {
                Ok(true) => Ok(Output::ok("EQUAL\n".into())),
                Ok(false) => Ok(Output::with_code(EXIT_FAILURE, "DISTINCT\n".into())),
                Err(Error::BoundExceeded(_)) => Ok(Output::with_code(EXIT_UNDECIDED, "UNDECIDED\n".into())),
                Err(e) => Err(Output::error(EXIT_DATA, e)),
            }
        }
        Command::Enumerate { presentation, dim, max_size, gamma } => {
            let m = load(presentation)?;
            if *dim > m.truncation() {
                return Err(Output::error(EXIT_DATA, format!("dimension {dim} above truncation {}", m.truncation())));
            }
            let mut out = String::new();
            for t in m.enumerate(*dim, *max_size, *gamma) {
                writeln!(out, "{t}").unwrap();
            }
            Ok(Output::ok(out))
        }
        Command::Contract { presentation, x, y } => {
            let m = load(presentation)?;
            let (x, y) = (term(&m, x, bound)?, term(&m, y, bound)?);
            let c = contract(&x, &y, m.truncation(), bound).map_err(|e| Output::error(code_for(&e), e))?;
            Ok(Output::ok(format!("{c}\n")))
        }
        Command::Oracle { presentation, dim, max_size, gamma } => {
            let m = load(presentation)?;
            let universe = m.universe((*dim).min(m.truncation()), *max_size, *gamma);
            Ok(Output::ok(oracle_closure(&universe).render()))
        }
        Command::CheckLaws { model: model_arg, window, samples, seed } => {
            let inst = model(model_arg, *window)?;
            let mut report = check_involutive_category(&inst.category);
            let base = Magma::new(inst.base.clone());
            let algebra = check_algebra(&inst.category, &base, &inst.assignment, *samples, *seed, bound);
            report.laws.extend(algebra.laws);
            Ok(report_output(&report, &format!("MODEL {}\n", inst.category.name())))
        }
        Command::MonadCheck { presentation, samples, seed } => {
            let m = load(presentation)?;
            let report = check_monad_laws(m.presentation(), *samples, *seed, bound);
            Ok(report_output(&report, ""))
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output::ok(text)
            };
        }
    };
    let mut out = execute(&cli).unwrap_or_else(|e| e);
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            return Output::error(EXIT_NO_INPUT, format!("{}: {e}", path.display()));
        }
        out.stdout.clear();
    }
    out
}
