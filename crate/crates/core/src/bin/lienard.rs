fn main() {
    std::process::exit(lienard::cli::main_with_args(std::env::args_os()));
}
