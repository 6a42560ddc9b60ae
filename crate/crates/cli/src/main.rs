use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = psc::Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = psc::run(&cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("psc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
