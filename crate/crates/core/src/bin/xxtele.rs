use std::process::ExitCode;

use clap::Parser;
use xxtele::cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}
