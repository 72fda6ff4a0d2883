fn main() {
    std::process::exit(fluxsat::cli::run_cli(std::env::args_os()));
}
