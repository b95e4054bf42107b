fn main() {
    std::process::exit(radialprop::cli::run(std::env::args_os()));
}
