//! The `osplpp` command line: enumeration caches, exact verifications,
//! simulation to CSV and two-sample comparison of CSV files.
//!
//! Exit codes: 0 when every assertion passes, 1 when one fails (or a run
//! cannot complete), 2 for usage errors.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use osplpp::edelman_greene::{verify_eg_bijection, verify_eg_params};
use osplpp::genfun::{term_table_f, term_table_g, verify_identity, IdentityMethod, RationalFunction};
use osplpp::io::{ensure_enumeration, read_vectors_csv, write_vectors_csv, EnumerationKind, VectorRow};
use osplpp::processes::{compare_vectors, sample_vectors, sample_vw_pairs, Functional, Model};
use osplpp::rsk::{thm22_report, verify_rsk_burge, OracleLaw};
use osplpp::{Error, Permutation, TestReport, YoungDiagram};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "osplpp", version, about = "Oriented swap process, corner growth and last passage percolation")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalOpts {
    /// Base seed; replica `i` draws from stream `(seed, i)`.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = default_workers())]
    pub workers: usize,
    #[arg(long, global = true, default_value = ".osplpp-cache")]
    pub cache_dir: PathBuf,
    /// Output file: CSV for `simulate`, a JSON record otherwise.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write (or re-validate) the enumeration cache of order n.
    Enumerate {
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
    /// Run an exact verification suite.
    Verify(VerifyArgs),
    /// Simulate replicas and write one CSV row per replica (two for lpp).
    Simulate {
        model: SimModel,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        replicas: usize,
    },
    /// Two-sample KS tests between two CSV files, per coordinate and per functional.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Syt,
    Networks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Eg,
    Identity,
    RskBurge,
    Thm22,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Canonical,
    Evaluation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimModel {
    Osp,
    OspClocks,
    Growth,
    Lpp,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    pub target: Target,
    /// Order for eg and identity; box side for rsk-burge.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Canonical)]
    pub method: Method,
    /// Evaluation points for `--method evaluation`.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Print the F and G components at this permutation, e.g. 1,3,2.
    #[arg(long)]
    pub show_component: Option<String>,
    /// thm22: uniform {0,1} weights instead of geometric.
    #[arg(long)]
    pub bernoulli: bool,
    /// thm22: shape as comma-separated row lengths.
    #[arg(long, default_value = "2,2")]
    pub shape: String,
    /// thm22: geometric parameter, a rational such as 1/2.
    #[arg(long, default_value = "1/2")]
    pub p: String,
    /// thm22: geometric support (smallest value).
    #[arg(long, default_value_t = 0)]
    pub support: u64,
    /// thm22: largest border value enumerated.
    #[arg(long, default_value_t = 4)]
    pub cap: i64,
    /// rsk-burge: entries range over 0..=max-entry.
    #[arg(long, default_value_t = 2)]
    pub max_entry: i64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    pub lhs: PathBuf,
    pub rhs: PathBuf,
    /// Keep only lhs rows with this vector tag (U, V or W).
    #[arg(long)]
    pub lhs_vector: Option<String>,
    #[arg(long)]
    pub rhs_vector: Option<String>,
    /// Functionals to test: cK, max, sum or lin:K=A,...; repeatable.
    /// Defaults to every coordinate, max, sum and, from dimension 5, lin:2=1,5=2.
    #[arg(long = "functional")]
    pub functionals: Vec<String>,
    /// Each KS test must have p above this level.
    #[arg(long, default_value_t = 1e-3)]
    pub alpha: f64,
}

/// Everything needed to reproduce a run; embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub n: Option<usize>,
    pub seed: u64,
    pub replicas: Option<usize>,
    pub tol: Option<f64>,
    pub method: Option<Method>,
    pub workers: usize,
    pub cache_dir: PathBuf,
    pub out: Option<PathBuf>,
    pub flags: serde_json::Value,
}

/// Failure of a command: a usage problem or a run that could not finish.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. }
            | Error::InvalidOrder(_)
            | Error::InvalidShape(_)
            | Error::InvalidPermutation(_)
            | Error::Parse(_)
            | Error::SizeCap(_) => CliError::Usage(e.to_string()),
            other => CliError::Run(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn check_n(n: usize, lo: usize, hi: usize, what: &str) -> CliResult<()> {
    if n < lo || n > hi {
        return Err(CliError::Usage(format!("{what} needs n in {lo}..={hi}, got {n}")));
    }
    Ok(())
}

fn base_config(g: &GlobalOpts, command: &str) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        n: None,
        seed: g.seed,
        replicas: None,
        tol: None,
        method: None,
        workers: g.workers,
        cache_dir: g.cache_dir.clone(),
        out: g.out.clone(),
        flags: serde_json::Value::Null,
    }
}

#[derive(Serialize)]
struct Record<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

fn write_json<T: Serialize>(path: &Path, config: &RunConfig, body: T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(&Record { config, body }).map_err(|e| CliError::Run(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[derive(Serialize)]
struct ReportBody<'a> {
    report: &'a TestReport,
}

/// Prints the report and writes the JSON record; returns the exit code.
fn emit_report(out: &mut dyn Write, config: &RunConfig, report: &TestReport) -> CliResult<u8> {
    write!(out, "{report}")?;
    if let Some(path) = &config.out {
        write_json(path, config, ReportBody { report })?;
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn run_enumerate(g: &GlobalOpts, kind: Kind, n: usize, out: &mut dyn Write) -> CliResult<u8> {
    check_n(n, 2, 6, "enumerate")?;
    let mut config = base_config(g, "enumerate");
    config.n = Some(n);
    config.flags = serde_json::json!({ "kind": kind });
    let kind = match kind {
        Kind::Syt => EnumerationKind::Syt,
        Kind::Networks => EnumerationKind::Networks,
    };
    let outcome = ensure_enumeration(&g.cache_dir, kind, n)?;
    writeln!(out, "{} n={} count={} {:?} {}", kind, n, outcome.header.count, outcome.status, outcome.path.display())?;
    if let Some(path) = &config.out {
        write_json(path, &config, serde_json::json!({ "cache": outcome }))?;
    }
    Ok(EXIT_PASS)
}

fn show_component(out: &mut dyn Write, n: usize, spec: &str) -> CliResult<()> {
    let p: Permutation = spec.parse()?;
    if p.len() != n - 1 {
        return Err(CliError::Usage(format!("component {p} is not a permutation of 1..={}", n - 1)));
    }
    let f = RationalFunction::from_form(&term_table_f(n)?.component(&p));
    let g = RationalFunction::from_form(&term_table_g(n)?.component(&p));
    writeln!(out, "F_{n}[{p}] = {f}")?;
    writeln!(out, "G_{n}[{p}] = {g}")?;
    Ok(())
}

fn run_verify(g: &GlobalOpts, a: &VerifyArgs, out: &mut dyn Write) -> CliResult<u8> {
    let mut config = base_config(g, "verify");
    config.n = a.n;
    config.flags = serde_json::to_value(a).map_err(|e| CliError::Run(e.to_string()))?;
    let need_n = || a.n.ok_or_else(|| CliError::Usage(format!("verify {:?} needs --n", a.target)));
    let report = match a.target {
        Target::Eg => {
            let n = need_n()?;
            check_n(n, 2, 6, "verify eg")?;
            let mut r = TestReport::new(format!("edelman-greene, n={n}"));
            r.absorb(verify_eg_bijection(n)?);
            r.absorb(verify_eg_params(n)?);
            r
        }
        Target::Identity => {
            let n = need_n()?;
            check_n(n, 2, 6, "verify identity")?;
            config.method = Some(a.method);
            if let Some(spec) = &a.show_component {
                show_component(out, n, spec)?;
            }
            let method = match a.method {
                Method::Canonical => IdentityMethod::Canonical,
                Method::Evaluation => IdentityMethod::Evaluation { points: a.points, seed: g.seed },
            };
            verify_identity(n, method, g.workers)?
        }
        Target::RskBurge => {
            let n = a.n.unwrap_or(3);
            check_n(n, 1, 3, "verify rsk-burge")?;
            verify_rsk_burge(n, n, a.max_entry)?
        }
        Target::Thm22 => {
            let shape: YoungDiagram = a.shape.parse()?;
            let law = if a.bernoulli {
                OracleLaw::BernoulliUniform
            } else {
                let p: BigRational = a.p.parse().map_err(|e| CliError::Usage(format!("--p {:?}: {e}", a.p)))?;
                OracleLaw::Geometric { p, support: a.support }
            };
            thm22_report(&shape, &law, a.cap)?
        }
    };
    emit_report(out, &config, &report)
}

fn run_simulate(g: &GlobalOpts, model: SimModel, n: usize, replicas: usize, out: &mut dyn Write) -> CliResult<u8> {
    check_n(n, 2, 12, "simulate")?;
    if replicas == 0 {
        return Err(CliError::Usage("--replicas must be positive".into()));
    }
    let mut config = base_config(g, "simulate");
    config.n = Some(n);
    config.replicas = Some(replicas);
    config.flags = serde_json::json!({ "model": model });
    let single = |m: Model, tag: &str| -> CliResult<Vec<VectorRow>> {
        let vs = sample_vectors(m, n, replicas, g.seed, g.workers)?;
        Ok(vs.into_iter().enumerate().map(|(i, v)| VectorRow::new(i as u64, tag, v)).collect())
    };
    let rows = match model {
        SimModel::Osp => single(Model::Osp, "U")?,
        SimModel::OspClocks => single(Model::OspClocks, "U")?,
        SimModel::Growth => single(Model::CornerGrowth, "V")?,
        SimModel::Lpp => sample_vw_pairs(n, replicas, g.seed, g.workers)?
            .into_iter()
            .enumerate()
            .flat_map(|(i, (v, w))| [VectorRow::new(i as u64, "V", v), VectorRow::new(i as u64, "W", w)])
            .collect(),
    };
    match &config.out {
        Some(path) => {
            write_vectors_csv(File::create(path)?, &rows)?;
            let mut sidecar = path.clone().into_os_string();
            sidecar.push(".json");
            write_json(Path::new(&sidecar), &config, serde_json::json!({ "rows": rows.len() }))?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        None => write_vectors_csv(out, &rows)?,
    }
    Ok(EXIT_PASS)
}

fn load_vectors(path: &Path, tag: Option<&str>) -> CliResult<Vec<Vec<f64>>> {
    let file = File::open(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let rows = read_vectors_csv(file)?;
    let vs: Vec<Vec<f64>> = rows.into_iter().filter(|r| tag.is_none_or(|t| r.vector == t)).map(|r| r.coords).collect();
    if vs.is_empty() {
        return Err(CliError::Usage(format!("{}: no rows selected", path.display())));
    }
    Ok(vs)
}

fn run_compare(g: &GlobalOpts, a: &CompareArgs, out: &mut dyn Write) -> CliResult<u8> {
    let mut config = base_config(g, "compare");
    config.flags = serde_json::to_value(a).map_err(|e| CliError::Run(e.to_string()))?;
    let lhs = load_vectors(&a.lhs, a.lhs_vector.as_deref())?;
    let rhs = load_vectors(&a.rhs, a.rhs_vector.as_deref())?;
    let dim = lhs[0].len();
    if rhs[0].len() != dim {
        return Err(CliError::Usage(format!("schema mismatch: {dim} vs {} coordinates", rhs[0].len())));
    }
    config.n = Some(dim + 1);
    let functionals = if a.functionals.is_empty() {
        Functional::default_family(dim)
    } else {
        a.functionals.iter().map(|s| s.parse()).collect::<osplpp::Result<Vec<Functional>>>()?
    };
    let name = format!("{} vs {}", a.lhs.display(), a.rhs.display());
    let report = compare_vectors(name, &lhs, &rhs, &functionals, a.alpha)?;
    emit_report(out, &config, &report)
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<u8> {
    if cli.global.workers == 0 {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    let g = &cli.global;
    match &cli.command {
        Command::Enumerate { kind, n } => run_enumerate(g, *kind, *n, out),
        Command::Verify(a) => run_verify(g, a, out),
        Command::Simulate { model, n, replicas } => run_simulate(g, *model, *n, *replicas, out),
        Command::Compare(a) => run_compare(g, a, out),
    }
}

/// Parses `args` and runs the command; the return value is the exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
