fn main() {
    std::process::exit(ganet::cli::run(std::env::args_os()));
}
