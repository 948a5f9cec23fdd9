fn main() {
    std::process::exit(cartesian::cli::run(std::env::args_os()));
}
