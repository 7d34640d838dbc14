fn main() {
    std::process::exit(plasmon_casimir::cli::run(std::env::args_os()));
}
