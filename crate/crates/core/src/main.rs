fn main() {
    std::process::exit(polyfourier::cli::run(std::env::args_os()));
}
