fn main() -> std::process::ExitCode {
    qec422::cli::main()
}
