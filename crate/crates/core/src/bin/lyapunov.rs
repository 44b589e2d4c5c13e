fn main() {
    std::process::exit(lyapunov::cli::main_with_args(std::env::args_os()));
}
