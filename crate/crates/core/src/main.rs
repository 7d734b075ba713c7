fn main() {
    std::process::exit(rph::cli::run(std::env::args_os()));
}
