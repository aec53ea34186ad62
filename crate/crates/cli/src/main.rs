use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use ditrace::{run, Cli, SEED_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env = std::env::var(SEED_ENV).ok();
    let out = run(&cli, env.as_deref());
    // Ignore broken pipes; the exit code still reports the outcome.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
