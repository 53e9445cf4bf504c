fn main() {
    std::process::exit(tropex_cli::run());
}
