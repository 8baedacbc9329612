fn main() {
    std::process::exit(hyperioso::cli::run_from(std::env::args_os()));
}
