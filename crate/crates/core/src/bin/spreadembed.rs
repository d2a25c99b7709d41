fn main() -> std::process::ExitCode {
    spreadembed::cli::main()
}
