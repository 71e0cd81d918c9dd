//! `fibrant` command line: run scripts and bundled examples.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fibrant::reductions::Windows;
use fibrant_cli::ast::FieldSpec;
use fibrant_cli::{corpus, parse_script, run_script, Config};

#[derive(Parser)]
#[command(name = "fibrant", version, about = "Fiber cone, reduction and Hilbert coefficient computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest power used for series.
    #[arg(long, global = true, default_value_t = 12)]
    nmax: usize,
    /// Bound on reduction numbers.
    #[arg(long, global = true, default_value_t = 10)]
    red_bound: usize,
    /// Window of powers for asymptotic tests, as `a..b`.
    #[arg(long, global = true, value_parser = parse_range)]
    n_window: Option<(usize, usize)>,
    /// Seed for random reductions.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Random trials per search.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    /// Coefficient field, overriding the script.
    #[arg(long, global = true)]
    field: Option<FieldArg>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Allow examples marked as long.
    #[arg(long, global = true)]
    long: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script file.
    Run { file: PathBuf },
    /// Run a bundled example.
    Example { name: String },
    /// List bundled examples.
    ListExamples,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "qq")]
    Qq,
    #[value(name = "fp:32003")]
    Fp32003,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad bound {a}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad bound {b}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (source, long) = match &cli.command {
        Command::ListExamples => {
            for e in corpus::examples() {
                println!("{:<24} {}{}", e.name, e.summary, if e.long { " [long]" } else { "" });
            }
            return ExitCode::SUCCESS;
        }
        Command::Run { file } => match std::fs::read_to_string(file) {
            Ok(s) => (s, false),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", file.display());
                return ExitCode::from(2);
            }
        },
        Command::Example { name } => match corpus::find(name) {
            Some(e) => (e.source.to_string(), e.long),
            None => {
                eprintln!("error: unknown example {name}; see list-examples");
                return ExitCode::from(2);
            }
        },
    };
    if long && !cli.long {
        eprintln!("error: this example is long-running; pass --long to run it");
        return ExitCode::from(2);
    }
    let script = match parse_script(&source) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("parse error at {e}");
            return ExitCode::from(2);
        }
    };
    let mut windows = Windows { red_bound: cli.red_bound, seed: cli.seed, trials: cli.trials, ..Windows::default() };
    if let Some((a, b)) = cli.n_window {
        windows.n_window = a..=b;
    }
    let cfg = Config {
        windows,
        nmax: cli.nmax,
        field: cli.field.map(|f| match f {
            FieldArg::Qq => FieldSpec::Rationals,
            FieldArg::Fp32003 => FieldSpec::Prime(32003),
        }),
    };
    match run_script(&script, &cfg) {
        Ok(report) => {
            let text = if cli.json { report.render_json() + "\n" } else { report.render_text() };
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = if matches!(e, fibrant_cli::RunError::Core(fibrant::Error::ResourceLimit(_))) { 2 } else { 1 };
            ExitCode::from(code)
        }
    }
}
