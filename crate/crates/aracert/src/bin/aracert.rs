fn main() {
    std::process::exit(aracert::cli::run());
}
