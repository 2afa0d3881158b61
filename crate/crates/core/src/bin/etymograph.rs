fn main() {
    std::process::exit(etymograph::cli::run(std::env::args_os()));
}
