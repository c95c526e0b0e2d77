use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use etacong_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("etacong: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &out.body),
        None => io::stdout().lock().write_all(out.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("etacong: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if out.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
