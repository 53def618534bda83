use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use toric_vsit::cli::{run, Cli, RunConfig, SEED_VAR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var(SEED_VAR).ok();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut err = std::io::stderr();
    let result =
        RunConfig::from_cli(cli, seed.as_deref()).and_then(|cfg| run(&cfg, &mut out, &mut err));
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}
