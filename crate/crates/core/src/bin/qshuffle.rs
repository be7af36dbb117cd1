fn main() {
    std::process::exit(qshuffle::cli::main_with_args(std::env::args_os()));
}
