fn main() {
    std::process::exit(freshprince::cli::run(std::env::args_os()));
}
