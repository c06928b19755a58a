use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = ks_cli::run_command(std::env::args_os(), &mut std::io::stdin().lock());
    let _ = std::io::stdout().write_all(out.output.as_bytes());
    ExitCode::from(out.code as u8)
}
