use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ennea_cli::run(std::env::args_os()))
}
