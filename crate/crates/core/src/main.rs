fn main() {
    std::process::exit(ultraspec::cli::main_with_args(std::env::args_os()));
}
