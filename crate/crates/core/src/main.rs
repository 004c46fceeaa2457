fn main() {
    std::process::exit(greenpot::cli::main_with_args(std::env::args_os()));
}
