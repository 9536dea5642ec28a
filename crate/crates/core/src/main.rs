use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(cavity_spectra::cli::run(std::env::args_os()) as u8)
}
