fn main() {
    std::process::exit(sctt::cli::run());
}
