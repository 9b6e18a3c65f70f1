use std::process::ExitCode;

fn main() -> ExitCode {
    sinet::cli::run(std::env::args_os())
}
