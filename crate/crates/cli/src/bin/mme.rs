fn main() {
    std::process::exit(mme_cli::run(std::env::args_os()));
}
