use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = mtlfin::run(std::env::args_os(), &mut io::stdin().lock(), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
