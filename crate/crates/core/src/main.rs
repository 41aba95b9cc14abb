fn main() {
    std::process::exit(binseries::cli::run(std::env::args_os()));
}
