use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = selfsim_cli::run(std::env::args());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.status as u8)
}
