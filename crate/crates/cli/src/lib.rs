//! Command-line front end: `solve`, `check`, `gen`, `pressure`, `bench`.
//!
//! Exit status: 0 success, 1 usage or parse error, 2 infeasible (or a
//! solution that does not fit), 3 budget exceeded or optimality not proven.

pub mod bench;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use spill_core::dispatch::{plan, run as run_algo, solve_auto, SolveConfig};
use spill_core::exact::{verify, BnbConfig};
use spill_core::format::{parse, serialize};
use spill_core::model::is_chordal;
use spill_core::reductions::{generate, parse_source, ReductionKind};
use spill_core::tree::DpConfig;
use spill_core::{pressure, Algorithm, HoleMode, Instance, Rational, SolveError, Target, VarId};

use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "spill", version, about = "Spill-everywhere register allocation solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a minimum-cost spill set.
    Solve(SolveArgs),
    /// Validate an instance, test chordality and optionally verify a solution.
    Check(CheckArgs),
    /// Generate a spill instance from a hardness source instance.
    Gen(GenArgs),
    /// Print register pressure at every sample point.
    Pressure(PressureArgs),
    /// Step counts of the dynamic programs on random instances.
    Bench(BenchArgs),
}

fn parse_mode(s: &str) -> Result<HoleMode, String> {
    match s {
        "holes" => Ok(HoleMode::WithHoles),
        "noholes" => Ok(HoleMode::WithoutHoles),
        _ => Err(format!("unknown mode `{s}`: expected holes or noholes")),
    }
}

/// `auto` or a named algorithm.
#[derive(Debug, Clone, Copy)]
struct AlgoChoice(Option<Algorithm>);

fn parse_algo(s: &str) -> Result<AlgoChoice, String> {
    if s == "auto" {
        Ok(AlgoChoice(None))
    } else {
        s.parse().map(|a| AlgoChoice(Some(a)))
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: PathBuf,
    /// r=<N>, omega-<k> or few=<k>; defaults to the file's `registers`.
    #[arg(long)]
    target: Option<Target>,
    #[arg(long, value_parser = parse_mode)]
    mode: HoleMode,
    #[arg(long, default_value = "auto", value_parser = parse_algo)]
    algo: AlgoChoice,
    /// Write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Cell budget for the dynamic programs.
    #[arg(long)]
    state_budget: Option<u64>,
    /// Node budget for branch and bound.
    #[arg(long)]
    node_budget: Option<u64>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    /// Spill set to verify: variable names, or a JSON report from `solve`.
    #[arg(long)]
    solution: Option<PathBuf>,
    #[arg(long)]
    target: Option<Target>,
    #[arg(long, value_parser = parse_mode, default_value = "noholes")]
    mode: HoleMode,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    reduction: ReductionKind,
    source: PathBuf,
    /// Instance output; the certificate goes next to it as `<out>.cert.json`.
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PressureArgs {
    file: PathBuf,
    #[arg(long, value_parser = parse_mode, default_value = "noholes")]
    mode: HoleMode,
    /// Spill set to apply first (same format as `check --solution`).
    #[arg(long)]
    spill: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "dp-fit,dp-fit-holes,dp-extra,dp-cover")]
    algo: Vec<Algorithm>,
    /// Program sizes to try.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
    points: Vec<u32>,
    #[arg(long, default_value_t = 10)]
    vars: usize,
    #[arg(long, default_value_t = 1)]
    h: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Solve independent instances concurrently.
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

/// A failed command: exit code plus message for stderr.
struct Fail(i32, String);

type Outcome = Result<i32, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance<Rational>, Fail> {
    let text = read(path)?;
    parse(&text).map_err(|e| {
        let lines: Vec<String> = e.diagnostics().iter().map(|d| format!("{}:{d}", path.display())).collect();
        usage(lines.join("\n"))
    })
}

/// Variable names separated by whitespace or commas (`#` comments), or a
/// JSON report.
fn load_spill(path: &Path, inst: &Instance<Rational>) -> Result<Vec<VarId>, Fail> {
    let text = read(path)?;
    let names: Vec<String> = if text.trim_start().starts_with('{') {
        let rep: Report = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        rep.solution.spilled
    } else {
        text.lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect()
    };
    names
        .iter()
        .map(|n| inst.var_by_name(n).ok_or_else(|| usage(format!("{}: unknown variable `{n}`", path.display()))))
        .collect()
}

fn target_for(target: Option<Target>, inst: &Instance<Rational>) -> Result<Target, Fail> {
    target
        .or_else(|| inst.registers().map(Target::Registers))
        .ok_or_else(|| usage("no --target given and the instance declares no `registers`"))
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Outcome {
    let inst = load(&a.file)?;
    let target = target_for(a.target, &inst)?;
    let mut config = SolveConfig::default();
    if let Some(b) = a.state_budget {
        config.dp = DpConfig { state_budget: b };
    }
    if let Some(b) = a.node_budget {
        config.bnb = BnbConfig { node_budget: b };
    }
    let (algo_name, result) = match a.algo.0 {
        Some(algo) => (algo.name().to_string(), run_algo(&inst, target, a.mode, algo, &config)),
        None => {
            let planned = plan(&inst, target, a.mode).map_err(|e| usage(e.to_string()))?;
            (planned.algorithm.name().to_string(), solve_auto(&inst, target, a.mode, &config))
        }
    };
    let (report, code, note) = match result {
        Ok(sol) => {
            let code = if sol.proven_optimal { EXIT_OK } else { EXIT_BUDGET };
            (Report::solved(&inst, &sol), code, None)
        }
        Err(SolveError::Infeasible(w)) => (Report::unsolved(&inst, &algo_name, false), EXIT_INFEASIBLE, Some(w.to_string())),
        Err(e @ (SolveError::BudgetExceeded { .. } | SolveError::TooLarge { .. })) => {
            (Report::unsolved(&inst, &algo_name, true), EXIT_BUDGET, Some(e.to_string()))
        }
        Err(e) => return Err(usage(e.to_string())),
    };
    let _ = writeln!(out, "target: {target}");
    let _ = writeln!(out, "mode: {}", a.mode);
    let _ = write!(out, "{report}");
    if let Some(n) = &note {
        let _ = writeln!(out, "note: {n}");
    }
    if let Some(path) = &a.json {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        write_file(path, &json)?;
    }
    Ok(code)
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Outcome {
    let inst = load(&a.file)?;
    let _ = writeln!(out, "valid: yes");
    let _ = writeln!(out, "points: {}", inst.num_points());
    let _ = writeln!(out, "variables: {}", inst.num_vars());
    let _ = writeln!(out, "omega: {}", inst.omega());
    let _ = writeln!(out, "h: {}", inst.h());
    let ch = is_chordal(&inst);
    let _ = writeln!(out, "chordal: {}", if ch.chordal { "yes" } else { "no" });
    let Some(path) = &a.solution else {
        return Ok(EXIT_OK);
    };
    let spilled = load_spill(path, &inst)?;
    let r = target_for(a.target, &inst)?
        .registers(inst.omega())
        .ok_or_else(|| usage("target is below zero"))?;
    let v = verify(&inst, &spilled, r, a.mode).map_err(|e| usage(e.to_string()))?;
    let _ = writeln!(out, "cost: {}", inst.cost_of(&spilled));
    if v.is_valid() {
        let _ = writeln!(out, "solution: fits {r} registers ({})", a.mode);
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "solution: exceeds {r} registers ({})", a.mode);
        for (s, p) in &v.violations {
            let _ = writeln!(out, "  {} pressure {p}", inst.sample_name(*s));
        }
        Ok(EXIT_INFEASIBLE)
    }
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Outcome {
    let source = parse_source(&read(&a.source)?).map_err(|e| usage(format!("{}: {e}", a.source.display())))?;
    let red = generate::<Rational>(&source, a.reduction).map_err(|e| usage(e.to_string()))?;
    let text = serialize(&red.instance);
    let cert = serde_json::to_string_pretty(&red.certificate).expect("certificate serializes");
    let cert_path = a.certificate.clone().or_else(|| {
        a.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".cert.json");
            PathBuf::from(s)
        })
    });
    match &a.out {
        Some(p) => write_file(p, &text)?,
        None => {
            let _ = write!(out, "{text}");
        }
    }
    if let Some(p) = &cert_path {
        write_file(p, &cert)?;
    }
    Ok(EXIT_OK)
}

fn show_pressure(a: PressureArgs, out: &mut dyn Write) -> Outcome {
    let inst = load(&a.file)?;
    let spilled = match &a.spill {
        Some(p) => load_spill(p, &inst)?,
        None => Vec::new(),
    };
    let prof = pressure(&inst, &spilled, a.mode).map_err(|e| usage(e.to_string()))?;
    for (s, p) in prof.values.iter().enumerate() {
        let _ = writeln!(out, "{}\t{p}", inst.sample_name(s));
    }
    let _ = writeln!(out, "max: {}", prof.max());
    Ok(EXIT_OK)
}

fn run_bench(a: BenchArgs, out: &mut dyn Write) -> Outcome {
    let dps = [Algorithm::DpFit, Algorithm::DpFitHoles, Algorithm::DpExtra, Algorithm::DpCover];
    if let Some(bad) = a.algo.iter().find(|x| !dps.contains(x)) {
        return Err(usage(format!("bench covers the dynamic programs only, not {bad}")));
    }
    let mut tasks = Vec::new();
    for &algo in &a.algo {
        for &points in &a.points {
            for rep in 0..a.reps {
                tasks.push(bench::Task { algo, points, vars: a.vars, h: a.h, k: a.k, seed: a.seed + rep });
            }
        }
    }
    let rows = bench::run_all(&tasks, a.parallel);
    let _ = writeln!(out, "{}", bench::header());
    for r in &rows {
        let _ = writeln!(out, "{r}");
    }
    if let Some(p) = &a.json {
        write_file(p, &serde_json::to_string_pretty(&rows).expect("rows serialize"))?;
    }
    Ok(EXIT_OK)
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => solve(a, out),
        Command::Check(a) => check(a, out),
        Command::Gen(a) => gen(a, out),
        Command::Pressure(a) => show_pressure(a, out),
        Command::Bench(a) => run_bench(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
