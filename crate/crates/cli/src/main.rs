use std::process::ExitCode;

use clap::Parser;
use seqsub_cli::error::EXIT_MALFORMED;
use seqsub_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_MALFORMED as u8
            } else {
                0
            });
        }
    };
    let mut out = String::new();
    let status = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    print!("{out}");
    ExitCode::from(status as u8)
}
