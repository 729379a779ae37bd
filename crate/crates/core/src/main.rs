use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;

fn main() -> anyhow::Result<ExitCode> {
    let outcome = msod_core::cli::run(std::env::args_os());
    std::io::stdout()
        .write_all(outcome.stdout.as_bytes())
        .context("writing stdout")?;
    std::io::stderr()
        .write_all(outcome.stderr.as_bytes())
        .context("writing stderr")?;
    Ok(ExitCode::from(outcome.code as u8))
}
