fn main() {
    std::process::exit(jigsaw::cli::main_with_args(std::env::args_os()));
}
