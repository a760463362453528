use std::process::ExitCode;

fn main() -> ExitCode {
    mdm_active_sets::cli::main_with_args(std::env::args_os())
}
