fn main() {
    std::process::exit(nskoszul::cli::main_with_args(std::env::args_os()));
}
