//! Command-line front end: `bw solve` and `bw bench`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{BwError, Deadline, Result};
use crate::io::{self, Format};
use crate::oracle::ORACLE_EDGE_LIMIT;
use crate::solve::{Algorithm, AnyHypergraph, SolveOptions, Status};

/// Largest edge count for which `--check` runs the oracle.
pub const CHECK_EDGE_LIMIT: usize = 12;

/// Exact CSV header written by `bw bench`.
pub const CSV_HEADER: &str = "instance,n,m,alg,bw,time_ms,status";

#[derive(Debug, Parser)]
#[command(name = "bw", version, about = "Exact branchwidth of graphs and hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute or decide the branchwidth of one instance.
    Solve(SolveArgs),
    /// Run algorithms over every instance of a directory and write a CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgArg {
    Hyper,
    Blocks,
    Root,
    Oracle,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::Hyper => Algorithm::Hyper,
            AlgArg::Blocks => Algorithm::Blocks,
            AlgArg::Root => Algorithm::Root,
            AlgArg::Oracle => Algorithm::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Gr,
    Hgr,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Algorithm.
    #[arg(long, value_enum, default_value = "hyper")]
    alg: AlgArg,
    /// Decide `bw <= K` instead of computing the width.
    #[arg(long, value_name = "K")]
    decide: Option<usize>,
    /// Write the decomposition to PATH.
    #[arg(long, value_name = "PATH", conflicts_with = "decide")]
    emit: Option<PathBuf>,
    /// Compare with the oracle (up to 12 edges) and re-check the emitted file.
    #[arg(long)]
    check: bool,
    /// Time limit in seconds.
    #[arg(long, value_name = "SECS")]
    timeout: Option<f64>,
    /// Input format; by default taken from the file extension.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Instance file.
    input: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Directory of `.gr` and `.hgr` files.
    #[arg(long)]
    dir: PathBuf,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "hyper,blocks,root")]
    algs: Vec<AlgArg>,
    /// Time limit per run in seconds.
    #[arg(long, value_name = "SECS")]
    timeout: Option<f64>,
    /// Instances solved in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Result of one solver run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Width(usize),
    Decision { k: usize, yes: bool },
}

/// Record of one run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub instance: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub algorithm: Algorithm,
    pub outcome: Option<Outcome>,
    pub time_ms: f64,
    pub status: Status,
    pub oracle_checked: bool,
    pub decomposition: Option<PathBuf>,
}

impl SolveReport {
    /// CSV row matching [`CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        let bw = match self.outcome {
            Some(Outcome::Width(k)) if self.status == Status::Ok => k.to_string(),
            _ => String::new(),
        };
        format!("{},{},{},{},{},{:.1},{}", self.instance, opt(self.n), opt(self.m), self.algorithm, bw, self.time_ms, self.status)
    }
}

/// Exit code for an error.
pub fn exit_code(e: &BwError) -> i32 {
    match e {
        BwError::Parse(_) => 2,
        BwError::Timeout => 3,
        BwError::Invariant(_) => 4,
        _ => 1,
    }
}

fn io_at(path: &Path, e: std::io::Error) -> BwError {
    BwError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn load(path: &Path, format: Option<Format>) -> Result<AnyHypergraph> {
    let text = fs::read_to_string(path).map_err(|e| io_at(path, e))?;
    let inst = io::parse(&text, format.unwrap_or_else(|| Format::from_path(path)))?;
    AnyHypergraph::from_instance(&inst)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_at(path, e))
}

/// Runs one solve and returns its report; `stdout` gets the answer line.
fn run_solve(args: &SolveArgs, stdout: &mut dyn std::io::Write) -> Result<SolveReport> {
    let format = args.format.map(|f| match f {
        FormatArg::Gr => Format::Gr,
        FormatArg::Hgr => Format::Hgr,
    });
    let h = load(&args.input, format)?;
    let algorithm: Algorithm = args.alg.into();
    let opts = SolveOptions::new(algorithm).with_deadline(Deadline::from_secs(args.timeout));
    let start = Instant::now();
    let mut report = SolveReport {
        instance: args.input.display().to_string(),
        n: Some(h.n()),
        m: Some(h.m()),
        algorithm,
        outcome: None,
        time_ms: 0.0,
        status: Status::Ok,
        oracle_checked: false,
        decomposition: None,
    };
    let oracle = || -> Result<Option<usize>> {
        if !args.check || h.m() > CHECK_EDGE_LIMIT.min(ORACLE_EDGE_LIMIT) {
            return Ok(None);
        }
        h.oracle_width().map(Some)
    };
    match args.decide {
        Some(k) => {
            let yes = h.decide(k, &opts)?;
            report.outcome = Some(Outcome::Decision { k, yes });
            if let Some(w) = oracle()? {
                report.oracle_checked = true;
                if (w <= k) != yes {
                    return Err(BwError::Invariant(format!("decision {yes} for k = {k} but the oracle width is {w}")));
                }
            }
            writeln!(stdout, "bw <= {k}: {}", if yes { "yes" } else { "no" })?;
        }
        None => {
            let sol = h.solve(&opts)?;
            report.outcome = Some(Outcome::Width(sol.width));
            if let Some(w) = oracle()? {
                report.oracle_checked = true;
                if w != sol.width {
                    return Err(BwError::Invariant(format!("width {} but the oracle width is {w}", sol.width)));
                }
            }
            if let Some(path) = &args.emit {
                write_file(path, &h.write_decomposition(&sol.decomposition))?;
                if args.check {
                    let text = fs::read_to_string(path).map_err(|e| io_at(path, e))?;
                    h.check_decomposition_text(&text, sol.width)?;
                }
                report.decomposition = Some(path.clone());
            }
            writeln!(stdout, "bw = {}", sol.width)?;
        }
    }
    report.time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn bench_one(path: &Path, algorithm: Algorithm, timeout: Option<f64>) -> SolveReport {
    let instance = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut report = SolveReport {
        instance,
        n: None,
        m: None,
        algorithm,
        outcome: None,
        time_ms: 0.0,
        status: Status::Error,
        oracle_checked: false,
        decomposition: None,
    };
    let h = match load(path, None) {
        Ok(h) => h,
        Err(e) => {
            report.status = Status::of::<()>(&Err(e));
            return report;
        }
    };
    report.n = Some(h.n());
    report.m = Some(h.m());
    let start = Instant::now();
    let result = h.solve(&SolveOptions::new(algorithm).with_deadline(Deadline::from_secs(timeout)));
    report.time_ms = start.elapsed().as_secs_f64() * 1e3;
    report.status = Status::of(&result);
    report.outcome = result.ok().map(|s| Outcome::Width(s.width));
    report
}

/// Instance files of `dir` in name order.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| io_at(dir, e))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("gr" | "hgr")))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every `(instance, algorithm)` pair and writes the CSV. Rows are
/// written by one thread as results arrive; with one job they follow
/// instance order, then algorithm order.
fn run_bench(args: &BenchArgs) -> Result<Vec<SolveReport>> {
    let files = instance_files(&args.dir)?;
    let algs: Vec<Algorithm> = args.algs.iter().map(|&a| a.into()).collect();
    let tasks: Vec<(&Path, Algorithm)> = files.iter().flat_map(|f| algs.iter().map(move |&a| (f.as_path(), a))).collect();
    let mut out = fs::File::create(&args.out).map_err(|e| io_at(&args.out, e))?;
    writeln!(out, "{CSV_HEADER}")?;
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<SolveReport>();
    let jobs = args.jobs.max(1);
    let mut reports = Vec::with_capacity(tasks.len());
    std::thread::scope(|scope| -> Result<()> {
        for _ in 0..jobs {
            let tx = tx.clone();
            let (tasks, next) = (&tasks, &next);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(path, alg)) = tasks.get(i) else { break };
                if tx.send(bench_one(path, alg, args.timeout)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for report in rx {
            writeln!(out, "{}", report.csv_row())?;
            out.flush()?;
            reports.push(report);
        }
        Ok(())
    })?;
    Ok(reports)
}

/// Entry point; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => run_solve(args, &mut std::io::stdout().lock()).map(|_| ()),
        Command::Bench(args) => run_bench(args).map(|reports| {
            let mut summary = String::new();
            let ok = reports.iter().filter(|r| r.status == Status::Ok).count();
            let _ = write!(summary, "{} runs, {ok} ok, written to {}", reports.len(), args.out.display());
            eprintln!("{summary}");
        }),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
