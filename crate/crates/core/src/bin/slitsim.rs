fn main() {
    std::process::exit(slitsim::cli::cli_main(std::env::args_os()));
}
