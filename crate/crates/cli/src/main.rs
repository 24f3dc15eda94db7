use std::process::ExitCode;

fn main() -> ExitCode {
    ebwtlab_cli::cli::run(std::env::args_os())
}
