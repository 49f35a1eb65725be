mod commands;
mod config;
mod dot;

use clap::Parser;
use commands::{Job, JobError, Outcome};
use config::JobConfig;
use std::path::PathBuf;
use std::process::ExitCode;

/// Builds folded quivers, highest-weight modules, crystals and R-matrices
/// from a config file and verifies them exactly.
#[derive(Parser, Debug)]
#[command(name = "qfold", version)]
struct Args {
    /// Job configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// fold, module, crystal, fold-crystal, tensor, theta, ybe, forms or all.
    #[arg(long)]
    command: Option<String>,
    /// Height bound for weight spaces and crystal vertices.
    #[arg(long)]
    depth: Option<i64>,
    /// Directory for the JSON report and DOT files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qfold: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match &args.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match JobConfig::parse(&text) {
                Ok(c) => c,
                Err(e) => return config_error(e),
            },
            Err(e) => return config_error(format!("cannot read {}: {e}", path.display())),
        },
        None => JobConfig::default(),
    };
    let Some(command) = args.command.clone().or(cfg.command.clone()) else {
        return config_error("no command given");
    };
    if !commands::COMMANDS.contains(&command.as_str()) {
        return config_error(format!("unknown command {command:?}; expected one of {}", commands::COMMANDS.join(", ")));
    }
    if args.config.is_none() && command != "all" {
        return config_error("--config is required for this command");
    }
    let cartan = if cfg.cartan.is_empty() && command == "all" {
        None
    } else {
        match cfg.cartan_data() {
            Ok(cd) => Some(cd),
            Err(e) => return config_error(e),
        }
    };
    let weights = match &cartan {
        Some(cd) => match cfg.dominant_weights(cd) {
            Ok(w) => w,
            Err(e) => return config_error(e),
        },
        None => Vec::new(),
    };
    let finite = cartan.as_ref().is_none_or(|cd| cd.is_finite_type());
    let depth = match args.depth.or(cfg.depth) {
        Some(d) if d < 0 => return config_error("depth must be nonnegative"),
        Some(d) => d,
        None if finite => i64::MAX,
        None => 4,
    };
    let out_dir = args.out.clone().or(cfg.out.as_ref().map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("qfold-out"));
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => return config_error(format!("cannot start worker pool: {e}")),
    };
    let job = Job { cartan, weights, depth };
    let outcome = match pool.install(|| commands::run(&command, &job)) {
        Ok(o) => o,
        Err(JobError::Config(msg)) => return config_error(msg),
        Err(JobError::Compute(e)) => Outcome::from_error(&e),
    };
    if let Err(e) = std::fs::create_dir_all(&out_dir) {
        return config_error(format!("cannot create {}: {e}", out_dir.display()));
    }
    for (name, contents) in &outcome.artifacts {
        if let Err(e) = std::fs::write(out_dir.join(name), contents) {
            return config_error(format!("cannot write {name}: {e}"));
        }
    }
    let report = outcome.into_report(&command);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let path = out_dir.join(format!("{command}.json"));
    if let Err(e) = std::fs::write(&path, json + "\n") {
        return config_error(format!("cannot write {}: {e}", path.display()));
    }
    match &report.first_failure {
        None => {
            println!("{command}: pass ({} checks)", report.checks);
            ExitCode::SUCCESS
        }
        Some(f) => {
            println!("{command}: FAIL [{}] {} at {}", f.report, f.identity, f.block);
            ExitCode::from(1)
        }
    }
}
