fn main() -> std::process::ExitCode {
    pauli_cli::run(std::env::args_os())
}
