use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use yqn_verify::config::{ConfigError, RunConfig, Suite};
use yqn_verify::report::write_atomic;
use yqn_verify::run::{dump, run};

#[derive(Parser)]
#[command(name = "verify", version, about = "Exact checks for the Yangian of the queer Lie superalgebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// R-matrix identities: QYBE, unitarity, η-covariance, classical limit.
    Rmatrix(Flags),
    /// Evaluation representations: RTT, comultiplication, centre, co-Poisson.
    Yangian(Flags),
    /// The pairing with the dual Yangian and the quantum double.
    Pairing(Flags),
    /// Sergeev algebras: relations, y-elements, γ_m, PBW.
    Sergeev(Flags),
    /// The Drinfeld functor on A_n-modules.
    Drinfeld(Flags),
    /// Every suite.
    All(Flags),
}

#[derive(Args, Clone)]
struct Flags {
    /// `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "N")]
    big_n: Option<String>,
    #[arg(long = "n")]
    n: Option<String>,
    /// Comma-separated Gaussian rationals such as `1,1/2,3+1/2*i`.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[arg(long)]
    max_degree: Option<String>,
    #[arg(long)]
    smax: Option<String>,
    /// x-degree bound for the Sergeev checks.
    #[arg(long)]
    degree: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Comma-separated check groups.
    #[arg(long)]
    checks: Option<String>,
    /// `principal:z=2,5` or `pullback:m=1,n=2,M=1`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    module: Vec<String>,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the exact objects behind the run as JSON.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[arg(long)]
    negative_controls: bool,
    /// Record wall-clock time per check group (reports stop being
    /// byte-identical across runs).
    #[arg(long)]
    timings: bool,
}

fn build_config(f: &Flags) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    if let Some(p) = &f.config {
        cfg.apply_file(p)?;
    }
    let pairs = [
        ("N", &f.big_n),
        ("n", &f.n),
        ("points", &f.points),
        ("max-degree", &f.max_degree),
        ("smax", &f.smax),
        ("degree", &f.degree),
        ("seed", &f.seed),
        ("checks", &f.checks),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    if !f.module.is_empty() {
        cfg.set("module", &f.module.join(";"))?;
    }
    if let Some(p) = &f.report {
        cfg.report = Some(p.clone());
    }
    if let Some(p) = &f.dump {
        cfg.dump = Some(p.clone());
    }
    cfg.negative_controls |= f.negative_controls;
    cfg.timings |= f.timings;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, suites, flags): (&str, Vec<Suite>, &Flags) = match &cli.command {
        Command::Rmatrix(f) => ("rmatrix", vec![Suite::Rmatrix], f),
        Command::Yangian(f) => ("yangian", vec![Suite::Yangian], f),
        Command::Pairing(f) => ("pairing", vec![Suite::Pairing], f),
        Command::Sergeev(f) => ("sergeev", vec![Suite::Sergeev], f),
        Command::Drinfeld(f) => ("drinfeld", vec![Suite::Drinfeld], f),
        Command::All(f) => ("all", Suite::ALL.to_vec(), f),
    };
    let cfg = match build_config(flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(name, &suites, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &report.records {
        let mark = match (r.status.as_str(), r.expected) {
            ("pass", true) => "PASS",
            ("fail", true) => "FAIL (expected)",
            ("pass", false) => "PASS (unexpected)",
            ("fail", false) => "FAIL",
            _ => "INCONCLUSIVE",
        };
        let extra = r.witness.as_deref().unwrap_or(&r.detail);
        println!("{mark:<18} {}/{}: {}  [{extra}]", r.suite, r.group, r.name);
    }
    let s = &report.summary;
    println!("{} checks: {} pass, {} fail, {} inconclusive, {} unexpected", s.total, s.pass, s.fail, s.inconclusive, s.unexpected);
    if let Some(p) = &cfg.report {
        if let Err(e) = write_atomic(p, &report.to_json()) {
            eprintln!("error: cannot write report {}: {e}", p.display());
            return ExitCode::from(2);
        }
    }
    if let Some(p) = &cfg.dump {
        let text = serde_json::to_string_pretty(&dump(&suites, &cfg)).expect("dump serializes") + "\n";
        if let Err(e) = write_atomic(p, &text) {
            eprintln!("error: cannot write dump {}: {e}", p.display());
            return ExitCode::from(2);
        }
    }
    if report.all_expected() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
