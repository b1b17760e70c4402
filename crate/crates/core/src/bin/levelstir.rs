fn main() {
    std::process::exit(levelstir::cli::run(std::env::args_os()));
}
