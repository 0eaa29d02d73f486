fn main() {
    std::process::exit(tritower::cli::run(std::env::args_os()));
}
