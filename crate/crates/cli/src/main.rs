use std::io::Write;
use std::process::ExitCode;

use boxsum_cli::{exit, render, run, Cli, RunConfig};
use clap::Parser;

/// Overrides the worker count used by the library's parallel reductions.
const THREADS_ENV: &str = "BOXSUM_THREADS";

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = RunConfig::from_cli(cli).and_then(|config| {
        let format = config.output;
        run(&config).map(|o| (o, format))
    });
    match outcome {
        Ok((outcome, format)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(render(&outcome, format).as_bytes()).is_err() {
                return ExitCode::from(exit::INTERNAL);
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
