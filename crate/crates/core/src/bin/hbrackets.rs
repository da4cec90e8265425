fn main() -> std::process::ExitCode {
    higher_brackets::cli::main()
}
