fn main() -> std::process::ExitCode {
    osplpp_cli::main_with_args(std::env::args_os())
}
