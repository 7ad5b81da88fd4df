use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use semicoarse_cli::{run, Cli};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(&cli, &argv) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(semicoarse_cli::EXIT_INPUT as u8);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(w) = e.witness() {
                eprintln!("witness: {w}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
