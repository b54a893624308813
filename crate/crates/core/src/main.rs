fn main() {
    std::process::exit(diagcert::cli::main_with_args(std::env::args_os()));
}
