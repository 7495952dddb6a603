fn main() {
    std::process::exit(bcsurf_cli::main_with_args(std::env::args_os()));
}
