use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = seqprod::cli::Cli::parse();
    ExitCode::from(seqprod::cli::run(cli))
}
