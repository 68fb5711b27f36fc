//! `l1cocycle`: run a verification suite and write its CSV and JSON reports.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use l1cocycle::harness::{
    check_fixture, emit_report, parse_config, parse_vector_spec, parse_word_list, run_suite, ExperimentConfig,
    ExperimentReport, FixtureStatus, Suite,
};
use l1cocycle::Error;

#[derive(Parser, Debug)]
#[command(name = "l1cocycle", version, about = "Exact checks for quasi-cocycles and affine actions of F2 on l1")]
struct Cli {
    /// `key = value` config file; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// CSV output path; the JSON summary goes next to it. Defaults to stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// `exact` or `float`. The profile suite also takes `tripod` or `decay` here.
    #[arg(long, global = true, value_name = "MODE", action = ArgAction::Append)]
    mode: Vec<String>,
    /// Run every loop sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[arg(long, global = true, value_name = "N")]
    cap: Option<u64>,
    /// Compare the summary with the stored fixture of this name.
    #[arg(long, global = true, value_name = "NAME")]
    fixture: Option<String>,
    /// Overwrite the fixture named by `--fixture`.
    #[arg(long, global = true, requires = "fixture")]
    regen_fixtures: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cocycle, Leibniz, coboundary and representation identities.
    Verify(BrooksArgs),
    /// Defect of the counting quasi-cocycle for each radius.
    Defect(BrooksArgs),
    /// Norms of the counting quasi-cocycle along powers of the word.
    OrbitGrowth(BrooksArgs),
    /// Counting sets and the truncated distance sum on a ball.
    DistanceFormula(QtArgs),
    /// Sphere statistics of the assembled action.
    Profile(ProfileArgs),
    /// Properties of the slowly growing function and its decay weights.
    Theta(ThetaArgs),
}

#[derive(Args, Debug)]
struct BrooksArgs {
    #[arg(long, allow_hyphen_values = true)]
    radius: Option<String>,
    #[arg(long)]
    word: Option<String>,
    /// Terms `coefficient:index`, e.g. `1:e,-1:aa`.
    #[arg(long, allow_hyphen_values = true)]
    vector: Option<String>,
    #[arg(long)]
    n_max: Option<u64>,
}

#[derive(Args, Debug)]
struct QtArgs {
    /// Comma-separated base words, e.g. `a,b,ab,aB`.
    #[arg(long)]
    families: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    radius: Option<String>,
    #[arg(long = "eps")]
    eps: Option<u32>,
    #[arg(long = "L")]
    l: Option<u32>,
    #[arg(long = "K", id = "K")]
    k_cross: Option<u32>,
    #[arg(long = "M")]
    m: Option<usize>,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    qt: QtArgs,
    /// `tripod` or `decay`; same as `--mode tripod|decay`.
    #[arg(long)]
    instance: Option<String>,
    /// Iterated-log depth of the decay profile.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    defect_radius: Option<usize>,
    #[arg(long)]
    j_max: Option<u64>,
}

#[derive(Args, Debug)]
struct ThetaArgs {
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    grid_max: Option<u64>,
}

fn set<T: ToString>(cfg: &mut ExperimentConfig, key: &str, value: &Option<T>) -> Result<(), Error> {
    match value {
        Some(v) => cfg.set(key, &v.to_string()),
        None => Ok(()),
    }
}

fn apply_qt(cfg: &mut ExperimentConfig, a: &QtArgs) -> Result<(), Error> {
    if let Some(f) = &a.families {
        cfg.families = parse_word_list(f)?;
    }
    set(cfg, "radius", &a.radius)?;
    set(cfg, "w_eps", &a.eps)?;
    set(cfg, "L", &a.l)?;
    set(cfg, "K", &a.k_cross)?;
    set(cfg, "M", &a.m)
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => parse_config(&fs::read_to_string(path)?)?,
        None => ExperimentConfig::default(),
    };
    let (suite, profile) = match &cli.command {
        Command::Verify(a) | Command::Defect(a) | Command::OrbitGrowth(a) => {
            set(&mut cfg, "radius", &a.radius)?;
            set(&mut cfg, "word", &a.word)?;
            if let Some(v) = &a.vector {
                cfg.vector = parse_vector_spec(v)?;
            }
            set(&mut cfg, "n_max", &a.n_max)?;
            let suite = match cli.command {
                Command::Verify(_) => Suite::Verify,
                Command::Defect(_) => Suite::Defect,
                _ => Suite::OrbitGrowth,
            };
            (suite, false)
        }
        Command::DistanceFormula(a) => {
            apply_qt(&mut cfg, a)?;
            (Suite::DistanceFormula, false)
        }
        Command::Profile(a) => {
            apply_qt(&mut cfg, &a.qt)?;
            set(&mut cfg, "instance", &a.instance)?;
            set(&mut cfg, "k", &a.k)?;
            set(&mut cfg, "epsilon", &a.epsilon)?;
            set(&mut cfg, "defect_radius", &a.defect_radius)?;
            set(&mut cfg, "j_max", &a.j_max)?;
            (Suite::Profile, true)
        }
        Command::Theta(a) => {
            set(&mut cfg, "k", &a.k)?;
            set(&mut cfg, "grid_max", &a.grid_max)?;
            (Suite::Theta, false)
        }
    };
    cfg.suite = suite;
    for m in &cli.mode {
        match m.as_str() {
            "tripod" | "decay" if profile => cfg.set("instance", m)?,
            _ => cfg.set("mode", m)?,
        }
    }
    set(&mut cfg, "seed", &cli.seed)?;
    set(&mut cfg, "cap", &cli.cap)?;
    if cli.sequential {
        cfg.parallel = false;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(report: &ExperimentReport, cfg: &ExperimentConfig) -> Result<(), Error> {
    match &cfg.out {
        Some(path) => {
            let json = emit_report(report, path)?;
            eprintln!("wrote {} and {}", path.display(), json.display());
        }
        None => {
            let stdout = io::stdout();
            report.write_csv(stdout.lock())?;
            report.write_json(io::stderr().lock())?;
        }
    }
    io::stdout().flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let cfg = build_config(cli)?;
    let report = run_suite(&cfg)?;
    emit(&report, &cfg)?;
    let mut passed = report.passed();
    if let Some(name) = &cli.fixture {
        match check_fixture(name, &report.summary_json(false), cli.regen_fixtures)? {
            FixtureStatus::Matched => eprintln!("fixture {name}: matched"),
            FixtureStatus::Written => eprintln!("fixture {name}: written"),
            FixtureStatus::Mismatch { .. } => {
                eprintln!("fixture {name}: MISMATCH");
                passed = false;
            }
        }
    }
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    eprintln!("{} {}: {} violation(s)", report.suite, verdict, report.violations);
    if let Some(c) = &report.fitted_c {
        eprintln!("fitted C = {c}");
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
