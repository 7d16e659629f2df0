mod args;
mod output;
mod run;

use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use output::Outcome;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("COSIMPLEX_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("COSIMPLEX_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn render(out: &Outcome, cli: &Cli) -> String {
    match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.to_json(cli.timings)).expect("json") + "\n",
        Format::Text => out.to_text(cli.timings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if cli.list {
        emit(&run::listing());
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = &cli.command else {
        eprintln!("error: no subcommand given; try --help or --list");
        return ExitCode::from(2);
    };
    let outcome = match run::run(cmd, cli.seed) {
        Ok(o) => o,
        Err(e) if run::is_usage_error(&e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            let (suite, config) = run::describe(cmd, cli.seed);
            Outcome::errored(suite, config, e.to_string())
        }
    };
    emit(&render(&outcome, &cli));
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
