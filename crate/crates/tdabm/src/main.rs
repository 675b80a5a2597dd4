fn main() {
    std::process::exit(tdabm::cli::main_with_args(std::env::args_os().collect()));
}
