fn main() {
    std::process::exit(hybrid_noma_cli::run(std::env::args_os()));
}
