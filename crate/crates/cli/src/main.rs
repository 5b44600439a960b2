use std::io;
use std::process::ExitCode;

use clap::Parser;

use omega3_cli::{execute, Cli, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let config = RunConfig::from_cli(cli);
    let code = execute(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
