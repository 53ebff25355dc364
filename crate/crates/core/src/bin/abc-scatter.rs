use std::io::Write;
use std::process::ExitCode;

use abc_scatter::cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let (spec, cmd) = Cli::parse().command.into_spec();
    let out = run(&spec, cmd);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
