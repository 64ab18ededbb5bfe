use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let inv = quotcoh_cli::app::invoke(std::env::args_os());
    print!("{}", inv.stdout);
    eprint!("{}", inv.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(inv.exit as u8)
}
