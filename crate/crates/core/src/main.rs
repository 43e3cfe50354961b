fn main() -> std::process::ExitCode {
    localvertex::cli::main()
}
