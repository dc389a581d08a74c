fn main() {
    std::process::exit(elsa_cli::run(std::env::args_os()));
}
