fn main() {
    std::process::exit(caustic::cli::main_with_args(std::env::args_os()));
}
