use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use cli::{run, Cli};

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    let text = outcome.render();
    let written = match &outcome.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("surfalg: {e}");
        return ExitCode::from(1);
    }
    if let Some(e) = outcome.report.get("error").and_then(|e| e.as_str()) {
        eprintln!("surfalg: {e}");
    }
    ExitCode::from(outcome.status.code() as u8)
}
