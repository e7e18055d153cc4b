fn main() {
    std::process::exit(cliques::cli::run());
}
