use std::panic;
use std::process::ExitCode;

fn main() -> ExitCode {
    match panic::catch_unwind(|| exgen::cli::run(std::env::args_os())) {
        Ok(code) => ExitCode::from(code as u8),
        Err(_) => ExitCode::from(2),
    }
}
