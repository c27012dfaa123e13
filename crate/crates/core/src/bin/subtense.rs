fn main() {
    std::process::exit(apparent_size::cli::run(std::env::args_os()));
}
