//! Drives the command-line pipeline in-process and prints its JSON report.

use abc_scatter::cli::{run, Command, OutputFormat, RunSpec};

fn main() {
    let spec = RunSpec {
        gamma: 0.05,
        alpha: 0.2,
        output_format: OutputFormat::Json,
        ..RunSpec::default()
    };
    let out = run(&spec, Command::Validate);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.exit_code);
}
