fn main() {
    std::process::exit(mvlab::cli::run(std::env::args_os()));
}
