use std::process::ExitCode;

fn main() -> ExitCode {
    twosample::cli::main()
}
