fn main() {
    std::process::exit(cdcodes::cli::run_cli(std::env::args_os()));
}
