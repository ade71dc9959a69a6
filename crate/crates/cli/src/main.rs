use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let exec = flatsolv_cli::run(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(exec.stdout.as_bytes());
    let _ = std::io::stderr().write_all(exec.stderr.as_bytes());
    ExitCode::from(exec.exit_code() as u8)
}
