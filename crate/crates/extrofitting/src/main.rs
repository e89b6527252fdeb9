fn main() {
    std::process::exit(extrofitting::cli::run());
}
