use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use foldkit_cli::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let out = run(&cli);
    // Timing goes to stderr so that reports stay byte-identical.
    eprint!("{}", out.stderr);
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
