fn main() {
    std::process::exit(branchwidth::cli::run_cli(std::env::args_os()));
}
