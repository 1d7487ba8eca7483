fn main() {
    std::process::exit(breach::cli::main_with_args(std::env::args_os()));
}
