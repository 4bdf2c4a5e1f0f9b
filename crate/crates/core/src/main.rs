fn main() {
    std::process::exit(noether::cli::main_with_args(std::env::args_os()));
}
