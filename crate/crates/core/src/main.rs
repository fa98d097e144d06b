fn main() {
    std::process::exit(jackpart::cli::run(std::env::args_os()));
}
