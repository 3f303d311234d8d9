use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use spectracone_cli::{render, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|value| render(&cli.command, &value, &cli.output));
    match result {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(5);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(details) = e.details() {
                println!("{}", serde_json::to_string_pretty(details).unwrap_or_default());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
