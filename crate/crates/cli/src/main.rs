fn main() {
    std::process::exit(pgcode_cli::cli_main(std::env::args().collect()));
}
