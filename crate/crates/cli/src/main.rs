use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use commvar_cli::config::OutputFormat;
use commvar_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match execute(&cli, argv) {
        Ok(report) => {
            let text = match report.config.format {
                OutputFormat::Json => report.to_json() + "\n",
                OutputFormat::Text => report.render_text(),
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
