fn main() {
    std::process::exit(udg_steiner::cli::main_with_args(std::env::args_os()));
}
