use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rectlab_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("rectlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
